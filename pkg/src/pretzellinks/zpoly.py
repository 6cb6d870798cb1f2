"""Exact integer polynomial arithmetic in the Conway variable z.

ZPoly is a dense, immutable polynomial with arbitrary-precision integer
coefficients.  LaurentZ is the companion Laurent polynomial in an auxiliary
variable x, used only while evaluating determinants of the form
det(x*V - x^-1*V^T); its result is rewritten exactly in z = x - x^-1.
"""

from __future__ import annotations

import re
from typing import Iterable, Iterator

from .errors import InternalConsistencyError, ParseError


def exact_div(numerator: int, divisor: int) -> int:
    """Integer division that refuses to round."""
    q, r = divmod(numerator, divisor)
    if r:
        raise InternalConsistencyError(
            f"non-integral division: {numerator} / {divisor}")
    return q


def binomial(alpha: int, n: int) -> int:
    """Generalized binomial coefficient C(alpha, n), alpha any integer, n >= 0."""
    if n < 0:
        raise ValueError("lower index must be nonnegative")
    num = 1
    for i in range(n):
        num *= alpha - i
    fact = 1
    for i in range(2, n + 1):
        fact *= i
    return exact_div(num, fact)


class ZPoly:
    """Polynomial in z with exact integer coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[int] = ()):
        cs = list(coeffs)
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("ZPoly is immutable")

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls) -> "ZPoly":
        return cls(())

    @classmethod
    def one(cls) -> "ZPoly":
        return cls((1,))

    @classmethod
    def const(cls, c: int) -> "ZPoly":
        return cls((c,))

    @classmethod
    def term(cls, coeff: int, exp: int) -> "ZPoly":
        if exp < 0:
            raise ValueError("negative exponent")
        return cls((0,) * exp + (coeff,))

    # -- basic queries -----------------------------------------------------

    @property
    def degree(self) -> int:
        """Degree, with the zero polynomial assigned -1."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def coefficient(self, i: int) -> int:
        """The z^i coefficient (0 beyond the degree)."""
        if i < 0:
            raise ValueError("negative index")
        return self.coeffs[i] if i < len(self.coeffs) else 0

    def truncate(self, max_degree: int) -> "ZPoly":
        return ZPoly(self.coeffs[: max_degree + 1])

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other: "ZPoly") -> "ZPoly":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return ZPoly(out)

    def __sub__(self, other: "ZPoly") -> "ZPoly":
        return self + (-other)

    def __neg__(self) -> "ZPoly":
        return ZPoly(tuple(-c for c in self.coeffs))

    def __mul__(self, other):
        if isinstance(other, int):
            return ZPoly(tuple(c * other for c in self.coeffs))
        if not isinstance(other, ZPoly):
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return ZPoly()
        out = [0] * (len(a) + len(b) - 1)
        for i, ca in enumerate(a):
            if ca:
                for j, cb in enumerate(b):
                    out[i + j] += ca * cb
        return ZPoly(out)

    __rmul__ = __mul__

    def shift(self, k: int) -> "ZPoly":
        """Multiply by z^k."""
        if self.is_zero():
            return self
        return ZPoly((0,) * k + self.coeffs)

    def __eq__(self, other) -> bool:
        return isinstance(other, ZPoly) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(("ZPoly", self.coeffs))

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __iter__(self) -> Iterator[int]:
        return iter(self.coeffs)

    # -- text and JSON forms -----------------------------------------------

    def __str__(self) -> str:
        if self.is_zero():
            return "0"
        parts = []
        for exp, c in enumerate(self.coeffs):
            if c == 0:
                continue
            mag = abs(c)
            if exp == 0:
                body = str(mag)
            else:
                zs = "z" if exp == 1 else f"z^{exp}"
                body = zs if mag == 1 else f"{mag}{zs}"
            if not parts:
                parts.append(body if c > 0 else f"-{body}")
            else:
                parts.append(f"+ {body}" if c > 0 else f"- {body}")
        return " ".join(parts)

    def __repr__(self) -> str:
        return f"ZPoly({self})"

    def to_pairs(self) -> list[list[int]]:
        """JSON form: ascending [exponent, coefficient] pairs of nonzero terms."""
        return [[e, c] for e, c in enumerate(self.coeffs) if c]

    @classmethod
    def from_pairs(cls, pairs: Iterable[Iterable[int]]) -> "ZPoly":
        items = [(int(e), int(c)) for e, c in pairs]
        if not items:
            return cls.zero()
        out = [0] * (max(e for e, _ in items) + 1)
        for e, c in items:
            if e < 0:
                raise ParseError("negative exponent in polynomial pairs")
            out[e] += c
        return cls(out)

    _TERM_RE = re.compile(
        r"^\s*(?P<coeff>[+-]?\d*)\s*(?P<z>z(\^(?P<exp>\d+))?)?\s*$")

    @classmethod
    def parse(cls, text: str) -> "ZPoly":
        """Parse the text form emitted by __str__, e.g. '-9z^3 - 4z^5'."""
        s = text.strip()
        if not s:
            raise ParseError("empty polynomial text")
        # Normalize separators so each term keeps its sign.
        s = s.replace("-", "+-").replace(" ", "")
        if s.startswith("++-"):
            s = s[2:]
        chunks = [c for c in s.split("+") if c]
        if not chunks:
            raise ParseError(f"cannot parse polynomial: {text!r}")
        terms = []
        for chunk in chunks:
            m = cls._TERM_RE.match(chunk)
            if not m:
                raise ParseError(f"bad polynomial term: {chunk!r}")
            coeff_s = m.group("coeff")
            has_z = m.group("z") is not None
            if coeff_s in ("", "+", "-"):
                if not has_z:
                    raise ParseError(f"bad polynomial term: {chunk!r}")
                coeff = -1 if coeff_s == "-" else 1
            else:
                coeff = int(coeff_s)
            exp = 0
            if has_z:
                exp = int(m.group("exp")) if m.group("exp") else 1
            terms.append((exp, coeff))
        return cls.from_pairs(terms)


def coefficient(f: ZPoly, i: int) -> int:
    """Extract the z^i coefficient of f."""
    return f.coefficient(i)


class LaurentZ:
    """Laurent polynomial in x with integer coefficients (internal helper)."""

    __slots__ = ("lo", "coeffs")

    def __init__(self, lo: int = 0, coeffs: Iterable[int] = ()):
        cs = list(coeffs)
        while cs and cs[-1] == 0:
            cs.pop()
        start = 0
        while start < len(cs) and cs[start] == 0:
            start += 1
        cs = cs[start:]
        object.__setattr__(self, "lo", lo + start if cs else 0)
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("LaurentZ is immutable")

    @classmethod
    def zero(cls) -> "LaurentZ":
        return cls(0, ())

    @classmethod
    def const(cls, c: int) -> "LaurentZ":
        return cls(0, (c,))

    @classmethod
    def x_power(cls, k: int, coeff: int = 1) -> "LaurentZ":
        return cls(k, (coeff,))

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def hi(self) -> int:
        if self.is_zero():
            raise ValueError("zero Laurent polynomial has no top exponent")
        return self.lo + len(self.coeffs) - 1

    def coefficient(self, e: int) -> int:
        i = e - self.lo
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return 0

    def __add__(self, other: "LaurentZ") -> "LaurentZ":
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        lo = min(self.lo, other.lo)
        hi = max(self.lo + len(self.coeffs), other.lo + len(other.coeffs))
        out = [0] * (hi - lo)
        for i, c in enumerate(self.coeffs):
            out[self.lo - lo + i] += c
        for i, c in enumerate(other.coeffs):
            out[other.lo - lo + i] += c
        return LaurentZ(lo, out)

    def __neg__(self) -> "LaurentZ":
        return LaurentZ(self.lo, tuple(-c for c in self.coeffs))

    def __sub__(self, other: "LaurentZ") -> "LaurentZ":
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return LaurentZ(self.lo, tuple(c * other for c in self.coeffs))
        if not isinstance(other, LaurentZ):
            return NotImplemented
        if self.is_zero() or other.is_zero():
            return LaurentZ.zero()
        a, b = self.coeffs, other.coeffs
        out = [0] * (len(a) + len(b) - 1)
        for i, ca in enumerate(a):
            if ca:
                for j, cb in enumerate(b):
                    out[i + j] += ca * cb
        return LaurentZ(self.lo + other.lo, out)

    __rmul__ = __mul__

    def exact_div(self, other: "LaurentZ") -> "LaurentZ":
        """Exact division (raises if the remainder is nonzero)."""
        if other.is_zero():
            raise ZeroDivisionError("Laurent division by zero")
        if self.is_zero():
            return LaurentZ.zero()
        rem = list(self.coeffs)
        div = other.coeffs
        qlen = len(rem) - len(div) + 1
        if qlen <= 0:
            raise InternalConsistencyError("inexact Laurent division")
        quot = [0] * qlen
        lead = div[-1]
        for i in range(qlen - 1, -1, -1):
            q, r = divmod(rem[i + len(div) - 1], lead)
            if r:
                raise InternalConsistencyError("inexact Laurent division")
            quot[i] = q
            if q:
                for j, d in enumerate(div):
                    rem[i + j] -= q * d
        if any(rem):
            raise InternalConsistencyError("inexact Laurent division")
        return LaurentZ(self.lo - other.lo, quot)

    def __eq__(self, other) -> bool:
        return (isinstance(other, LaurentZ)
                and self.lo == other.lo and self.coeffs == other.coeffs)

    def __hash__(self) -> int:
        return hash(("LaurentZ", self.lo, self.coeffs))

    def __repr__(self) -> str:
        if self.is_zero():
            return "LaurentZ(0)"
        terms = [f"{c}*x^{self.lo + i}" for i, c in enumerate(self.coeffs) if c]
        return "LaurentZ(" + " + ".join(terms) + ")"

    def substitute_z(self) -> ZPoly:
        """Rewrite exactly in z = x - x^-1; raise if a residue remains."""
        rem = self
        out: dict[int, int] = {}
        while not rem.is_zero():
            d = rem.hi
            if d < 0:
                raise InternalConsistencyError(
                    "Laurent polynomial is not expressible in z = x - 1/x")
            c = rem.coefficient(d)
            out[d] = out.get(d, 0) + c
            # subtract c * (x - x^-1)^d
            expansion = [0] * (2 * d + 1)
            for j in range(d + 1):
                expansion[2 * (d - j)] = binomial(d, j) * ((-1) ** j) * c
            rem = rem - LaurentZ(-d, expansion)
        if not out:
            return ZPoly.zero()
        cs = [0] * (max(out) + 1)
        for e, c in out.items():
            cs[e] = c
        return ZPoly(cs)
