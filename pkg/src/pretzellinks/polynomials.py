"""Conway polynomials of pretzel links by resolution and closed forms.

Two engines live here: a state sum over per-region resolutions and a
memoized twist-by-twist recursion.  Both bottom out in `base_conway`, a
calibrated rewrite system for resolved sequences whose every rule is
cross-checked against the diagram oracle (and which falls back to the oracle
for anything outside its rule coverage).  Closed forms for the first two
interesting coefficients of 2-component pretzels are also provided.
"""

from __future__ import annotations

import threading
from typing import Optional

from . import diagrams
from .errors import InvalidSequenceError, UnrealizableOrientationError, UnsupportedError
from .sequences import (
    INF,
    EnhancedSequence,
    Entry,
    R,
    S,
    TwistType,
    dihedral_canonical,
    is_realizable,
)
from .zpoly import ZPoly, binomial, coefficient, exact_div  # noqa: F401 (re-export)


def phi_poly(t: int, cap: Optional[int] = None) -> ZPoly:
    """Odd twist-coefficient polynomial: sum of C(t+i, 2i+1) z^(2i+1).

    The support is finite (terms vanish for i >= |t|); `cap` only truncates
    the reported polynomial.
    """
    coeffs = [0] * (2 * abs(t) + 1)
    for i in range(abs(t)):
        coeffs[2 * i + 1] = binomial(t + i, 2 * i + 1)
    poly = ZPoly(coeffs)
    return poly if cap is None else poly.truncate(cap)


def psi_poly(t: int, cap: Optional[int] = None) -> ZPoly:
    """Even twist-coefficient polynomial: sum of C(t+i, 2i) z^(2i)."""
    n_terms = t + 1 if t >= 0 else -t
    coeffs = [0] * (2 * n_terms)
    for i in range(n_terms):
        coeffs[2 * i] = binomial(t + i, 2 * i)
    poly = ZPoly(coeffs)
    return poly if cap is None else poly.truncate(cap)


def torus_conway(k, eps: TwistType) -> ZPoly:
    """Conway polynomial of the (2, k) torus link with orientation type eps."""
    if k is INF:
        if eps is S:
            return ZPoly.one()
        raise UnrealizableOrientationError(
            "the crossingless smoothing with parallel closure is not orientable")
    if k % 2 == 0:
        p = k // 2
        return ZPoly((0, -p)) if eps is S else phi_poly(p)
    if eps is R:
        return psi_poly((k - 1) // 2)
    raise UnrealizableOrientationError(
        "an odd twist region cannot carry anti-parallel strands in a torus closure")


# ---------------------------------------------------------------------------
# base sequences

# Shared across calls; values are immutable, the lock guards the table for
# concurrent callers.
_BASE_MEMO: dict = {}
_BASE_LOCK = threading.Lock()


def base_conway(seq: EnhancedSequence) -> ZPoly:
    """Conway polynomial of a fully resolved (base) pretzel closure.

    Entries must come from the resolution alphabet {0s, infs, 1s, infr, 1r,
    0r}.  The value is produced by rewrite rules (drop crossingless cap-cup
    regions, then read off the torus/split/unknot pattern); anything outside
    the calibrated coverage is delegated to the diagram oracle.
    """
    for e in seq:
        if not (e.is_inf or e.k in (0, 1)):
            raise InvalidSequenceError(f"{e} is not a base entry")
    key = dihedral_canonical(seq.entries)
    with _BASE_LOCK:
        cached = _BASE_MEMO.get(key)
    if cached is not None:
        return cached
    value = _base_value(EnhancedSequence(key, base=True))
    with _BASE_LOCK:
        _BASE_MEMO[key] = value
    return value


def _base_value(seq: EnhancedSequence) -> ZPoly:
    # Reject unrealizable tag patterns up front (the rules assume a diagram).
    diagrams.orientation_data(seq)
    rest = [e for e in seq if not e.is_inf]
    if not rest:
        # Every region is a cap-cup: two crossingless circles.
        return ZPoly.zero()
    if all(e.k == 1 and e.eps is S for e in rest):
        # Cyclic single anti-parallel crossings close into a torus diagram.
        m = len(rest)
        return torus_conway(-m, R)
    if all(e.k in (0, 1) and (e.eps is R or e.k == 0) for e in rest):
        zeros = sum(1 for e in rest if e.k == 0)
        if zeros >= 2:
            return ZPoly.zero()
        if zeros == 1:
            return ZPoly.one()
        m = len(rest)
        if m % 2 != 0:
            raise UnrealizableOrientationError(
                "odd cyclic parallel crossings admit no orientation")
        return torus_conway(-m, S)
    return diagrams.oracle_conway(seq)


# ---------------------------------------------------------------------------
# state sum

_Z = ZPoly.term(1, 1)


def _resolutions(e: Entry) -> list[tuple[ZPoly, Entry]]:
    if e.is_inf:
        return [(ZPoly.one(), e)]
    k = e.k
    if e.eps is S:
        if k % 2 == 0:
            p = k // 2
            return [(ZPoly.one(), Entry(0, S)), (ZPoly((0, -p)), Entry(INF, S))]
        p = (k - 1) // 2
        return [(ZPoly.one(), Entry(1, S)), (ZPoly((0, -p)), Entry(INF, R))]
    if k % 2 == 0:
        p = k // 2
        return [(phi_poly(p), Entry(1, R)), (psi_poly(p - 1), Entry(0, R))]
    p = (k - 1) // 2
    return [(psi_poly(p), Entry(1, R)), (phi_poly(p), Entry(0, R))]


def statesum_conway(seq: EnhancedSequence) -> ZPoly:
    """Conway polynomial as a sum over all per-region resolutions."""
    _require_realizable(seq)
    total = ZPoly.zero()
    choices = [_resolutions(e) for e in seq]
    stack = [(0, ZPoly.one(), [])]
    while stack:
        i, coeff, picked = stack.pop()
        if i == len(choices):
            base = EnhancedSequence(tuple(picked), base=True)
            total = total + coeff * base_conway(base)
            continue
        for gamma, entry in choices[i]:
            if gamma.is_zero():
                continue
            stack.append((i + 1, coeff * gamma, picked + [entry]))
    return total


# ---------------------------------------------------------------------------
# twist reduction

def twistreduce_conway(seq: EnhancedSequence) -> ZPoly:
    """Conway polynomial by recursive two-term reduction of one region at a
    time, memoized on the cyclic-dihedral form of the partial sequence."""
    _require_realizable(seq)
    memo: dict = {}
    return _reduce(seq.entries, memo)


def _reduce(entries: tuple[Entry, ...], memo: dict) -> ZPoly:
    target = next(
        (i for i, e in enumerate(entries) if not (e.is_inf or e.k in (0, 1))),
        None)
    if target is None:
        return base_conway(EnhancedSequence(entries, base=True))
    key = dihedral_canonical(entries)
    cached = memo.get(key)
    if cached is not None:
        return cached

    def sub(entry: Entry) -> ZPoly:
        new = list(entries)
        new[target] = entry
        return _reduce(tuple(new), memo)

    e = entries[target]
    k = e.k
    if e.eps is S:
        if k % 2 == 0:
            p = k // 2
            value = sub(Entry(0, S)) - ZPoly((0, p)) * sub(Entry(INF, S))
        else:
            p = (k - 1) // 2
            value = sub(Entry(1, S)) - ZPoly((0, p)) * sub(Entry(INF, R))
    else:
        if k % 2 == 0:
            p = k // 2
            value = phi_poly(p) * sub(Entry(1, R)) + psi_poly(p - 1) * sub(Entry(0, R))
        else:
            p = (k - 1) // 2
            value = psi_poly(p) * sub(Entry(1, R)) + phi_poly(p) * sub(Entry(0, R))
    memo[key] = value
    return value


def _require_realizable(seq: EnhancedSequence) -> None:
    if seq.base:
        # Internal sequences only need a consistent orientation.
        diagrams.orientation_data(seq)
        return
    if not is_realizable(seq):
        raise UnrealizableOrientationError(f"{seq} admits no oriented diagram")


# ---------------------------------------------------------------------------
# closed forms for 2-component pretzels


def a1a3_odd(seq: EnhancedSequence) -> tuple[int, int]:
    """(a1, a3) of an all-odd, even-length pretzel with uniform type."""
    u = len(seq)
    if u % 2 != 0 or any(not e.is_odd for e in seq):
        raise InvalidSequenceError("expected an all-odd sequence of even length")
    eps_set = {e.eps for e in seq}
    if len(eps_set) != 1:
        raise InvalidSequenceError("expected a uniform orientation type")
    eps = eps_set.pop()
    nu = u // 2
    ps = [(e.k - 1) // 2 for e in seq]
    e1 = sum(ps)
    if eps is R:
        a1 = nu + e1
        a3 = (exact_div(a1 * sum(p * (p + 1) for p in ps), 2)
              - exact_div(sum(p * (p + 1) * (2 * p + 1) for p in ps), 6))
        return a1, a3
    a1 = -nu - e1
    # elementary symmetric sums of degree 2 and 3
    e2 = 0
    e3 = 0
    for i in range(u):
        for j in range(i + 1, u):
            e2 += ps[i] * ps[j]
            for k in range(j + 1, u):
                e3 += ps[i] * ps[j] * ps[k]
    a3 = -(exact_div(nu * (nu * nu - 1), 6)
           + exact_div(nu * (nu - 1), 2) * e1
           + (nu - 1) * e2
           + e3)
    return a1, a3


def a1a3_even(p: int, q: int, eps1: TwistType, eps2: TwistType, m: int) -> tuple[int, int]:
    """(a1, a3) of the 2-component pretzel with even entries 2p, 2q followed
    by |m| single twists of sign m (the standard shape, whose knot components
    are unknots).  For a general even pretzel use a1a3_even_from_sequence,
    which adds the component correction."""
    if (eps1, eps2) == (R, S):
        p, q = q, p
        eps1, eps2 = S, R
    if (eps1, eps2) == (S, S):
        return -(p + q), exact_div(m * p * q, 2)
    if (eps1, eps2) == (R, R):
        a3 = (exact_div((p + q + 1) * (p + q) * (p + q - 1), 6)
              + exact_div(m * p * q, 2))
        return p + q, a3
    a3 = exact_div(q * (q * q - 1), 6) - exact_div((m + q) * p * q, 2)
    return q - p, a3


def component_a2_total(seq: EnhancedSequence) -> int:
    """Total a2 of the knot components of a 2-component pretzel, in closed form.

    For the all-odd shape both components are crossingless circles, so the
    total is 0.  For the even shape the components are the side closures of
    the odd runs, i.e. connected sums of (2, k_i) torus knots, giving
    sum of p_i(p_i+1)/2 over the odd parameters k_i = 2p_i + 1.
    """
    evens = sum(1 for e in seq if e.is_even)
    if evens == 0:
        return 0
    if evens != 2:
        raise UnsupportedError("component a2 closed form needs 2 components")
    total = 0
    for e in seq:
        if e.is_odd:
            p = (e.k - 1) // 2
            total += exact_div(p * (p + 1), 2)
    return total


def a1a3_even_from_sequence(seq: EnhancedSequence) -> tuple[int, int]:
    """Exact (a1, a3) of any realizable 2-component even pretzel.

    The two even parameters give (p, q); the odd twist total m is the sum of
    the odd parameters (entry positions are immaterial).  The raw two-even
    closed form computes the sequence with every odd run spread into single
    twists, whose components are unknots; spreading a run changes a3 by a1
    times the components' a2 total, which is added back here.
    """
    evens = [e for e in seq if e.is_even]
    if len(evens) != 2:
        raise InvalidSequenceError("expected exactly two even parameters")
    m = sum(e.k for e in seq if e.is_odd)
    first, second = evens
    if first.eps is R and second.eps is S:
        first, second = second, first
    a1, a3 = a1a3_even(first.k // 2, second.k // 2, first.eps, second.eps, m)
    return a1, a3 + a1 * component_a2_total(seq)


def a1a3(seq: EnhancedSequence) -> tuple[int, int]:
    """(a1, a3) of any realizable 2-component pretzel via the closed forms."""
    evens = sum(1 for e in seq if e.is_even)
    if evens == 0:
        return a1a3_odd(seq)
    if evens == 2:
        return a1a3_even_from_sequence(seq)
    raise UnsupportedError("closed forms require a 2-component pretzel")
