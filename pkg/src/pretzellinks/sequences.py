"""Combinatorics of enhanced pretzel sequences.

A pretzel sequence is a cyclic word of nonzero integers (half-twist counts).
An enhanced sequence additionally tags each entry with its strand-orientation
type: S for anti-parallel strands, R for parallel strands.  Everything here
is pure and value-based; diagram semantics live in `diagrams`.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from enum import IntEnum
from typing import Iterator, NamedTuple, Optional, Sequence

from .errors import InvalidSequenceError, ParseError, UnsupportedError


class TwistType(IntEnum):
    """Orientation type of a twist region: S anti-parallel, R parallel."""

    S = 0
    R = 1

    def __str__(self) -> str:
        return "s" if self is TwistType.S else "r"

    @property
    def flipped(self) -> "TwistType":
        return TwistType.R if self is TwistType.S else TwistType.S


S = TwistType.S
R = TwistType.R


class _Infinity:
    """Symbolic infinity parameter for internal base entries."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "INF"


INF = _Infinity()


class Entry(NamedTuple):
    """One twist region: half-twist count and orientation type."""

    k: object  # int, or INF in internal base sequences
    eps: TwistType

    @property
    def is_inf(self) -> bool:
        return self.k is INF

    @property
    def is_even(self) -> bool:
        return not self.is_inf and self.k % 2 == 0

    @property
    def is_odd(self) -> bool:
        return not self.is_inf and self.k % 2 != 0

    def __str__(self) -> str:
        return f"{'inf' if self.is_inf else self.k}{self.eps}"


_ENTRY_RE = re.compile(r"^\s*(?P<k>[+-]?\d+|inf)\s*(?P<eps>[srSR])?\s*$")


@dataclass(frozen=True)
class EnhancedSequence:
    """Cyclic word of (k, eps) entries; the central combinatorial object.

    User-level sequences require every k to be a nonzero finite integer.
    Sequences built internally during resolution may carry k = 0 or k = INF
    and must be flagged with base=True.
    """

    entries: tuple[Entry, ...]
    base: bool = field(default=False, compare=False)

    def __post_init__(self):
        if not self.entries:
            raise InvalidSequenceError("a pretzel sequence needs at least one entry")
        for e in self.entries:
            if not isinstance(e, Entry):
                raise InvalidSequenceError(f"not an Entry: {e!r}")
            if not isinstance(e.eps, TwistType):
                raise InvalidSequenceError(f"bad twist type in {e!r}")
            if e.is_inf or e.k == 0:
                if not self.base:
                    raise InvalidSequenceError(
                        f"entry {e} is only allowed in internal base sequences")
            elif not isinstance(e.k, int):
                raise InvalidSequenceError(f"non-integer parameter in {e!r}")

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self) -> Iterator[Entry]:
        return iter(self.entries)

    def __getitem__(self, i: int) -> Entry:
        return self.entries[i]

    def __str__(self) -> str:
        return ",".join(str(e) for e in self.entries)

    def plain(self) -> tuple[int, ...]:
        if any(e.is_inf for e in self.entries):
            raise InvalidSequenceError("plain part undefined with infinite entries")
        return tuple(e.k for e in self.entries)

    def replace(self, i: int, entry: Entry, base: Optional[bool] = None) -> "EnhancedSequence":
        new = list(self.entries)
        new[i] = entry
        flag = self.base if base is None else base
        if entry.is_inf or entry.k == 0:
            flag = True
        return EnhancedSequence(tuple(new), base=flag)

    def delete(self, i: int) -> "EnhancedSequence":
        new = self.entries[:i] + self.entries[i + 1:]
        return EnhancedSequence(new, base=self.base)

    @classmethod
    def of(cls, *pairs, base: bool = False) -> "EnhancedSequence":
        """Build from (k, eps) pairs, e.g. EnhancedSequence.of((4, S), (5, R))."""
        return cls(tuple(Entry(k, eps) for k, eps in pairs), base=base)

    @classmethod
    def parse(cls, text: str, base: bool = False) -> "EnhancedSequence":
        """Parse the text grammar, e.g. '4s,5r,6r,-2r,-3r' or 'P(4s,5r)'."""
        entries = []
        for tok in _split_sequence_text(text):
            m = _ENTRY_RE.match(tok)
            if not m or m.group("eps") is None:
                raise ParseError(f"bad enhanced entry: {tok!r}")
            k_s = m.group("k")
            k = INF if k_s == "inf" else int(k_s)
            eps = S if m.group("eps").lower() == "s" else R
            entries.append(Entry(k, eps))
        return cls(tuple(entries), base=base)


def _split_sequence_text(text: str) -> list[str]:
    s = text.strip()
    m = re.match(r"^[pP]\s*\((?P<body>.*)\)\s*$", s)
    if m:
        s = m.group("body")
    toks = [t for t in (p.strip() for p in s.split(",")) if t]
    if not toks:
        raise ParseError(f"empty sequence text: {text!r}")
    return toks


def parse_plain(text: str) -> tuple[int, ...]:
    """Parse a plain sequence like '4,5,6,-2,-3' (optionally P(...)-wrapped)."""
    ks = []
    for tok in _split_sequence_text(text):
        m = _ENTRY_RE.match(tok)
        if not m or m.group("eps") is not None or m.group("k") == "inf":
            raise ParseError(f"bad plain entry: {tok!r}")
        ks.append(int(m.group("k")))
    return tuple(ks)


# A pairing is a tuple of index pairs (i, j), 0-based, each index used once,
# pairing entries whose parameters sum to zero.
Pairing = tuple[tuple[int, int], ...]


def _check_plain(ks: Sequence[int]) -> tuple[int, ...]:
    ks = tuple(ks)
    if not ks:
        raise InvalidSequenceError("empty pretzel sequence")
    if any(k == 0 for k in ks):
        raise InvalidSequenceError("pretzel parameters must be nonzero")
    return ks


def component_count(ks: Sequence[int]) -> int:
    """Number of link components of the pretzel with these parameters."""
    ks = _check_plain(ks)
    evens = sum(1 for k in ks if k % 2 == 0)
    if evens == 0:
        return 1 if len(ks) % 2 == 1 else 2
    return max(evens, 1)


def is_realizable(seq: EnhancedSequence) -> bool:
    """Whether the tagged orientation pattern is realizable on the diagram."""
    ks = [e.k for e in seq]
    if any(k == 0 or e.is_inf for k, e in zip(ks, seq)):
        raise InvalidSequenceError("realizability is a user-level question")
    evens = [e for e in seq if e.is_even]
    if not evens:
        if len(seq) % 2 == 1:
            return all(e.eps is S for e in seq)
        return all(e.eps is S for e in seq) or all(e.eps is R for e in seq)
    n_r = sum(1 for e in seq if e.eps is R)
    if n_r % 2 != 0:
        return False
    return all(e.eps is R for e in seq if e.is_odd)


def enumerate_enhancements(ks: Sequence[int]) -> list[EnhancedSequence]:
    """All realizable type assignments, in binary-counter order (S before R)."""
    ks = _check_plain(ks)
    u = len(ks)
    out = []
    for mask in range(1 << u):
        entries = tuple(
            Entry(k, R if (mask >> (u - 1 - i)) & 1 else S)
            for i, k in enumerate(ks))
        seq = EnhancedSequence(entries)
        if is_realizable(seq):
            out.append(seq)
    return out


def even_subsequence(seq: EnhancedSequence) -> EnhancedSequence:
    """Subsequence of even-parameter entries, in original cyclic order."""
    evens = tuple(e for e in seq if e.is_even)
    if not evens:
        raise InvalidSequenceError("sequence has no even parameters")
    return EnhancedSequence(evens, base=seq.base)


def twist_surplus(seq: EnhancedSequence) -> int:
    """Sum of the odd parameters minus the number of parameters equal to -2."""
    odd_sum = sum(e.k for e in seq if e.is_odd)
    minus_twos = sum(1 for e in seq if not e.is_inf and e.k == -2)
    return odd_sum - minus_twos


def normalize_even(seq: EnhancedSequence) -> EnhancedSequence:
    """Flip every -2 entry to +2 with the opposite type; requires all-even input."""
    if any(not e.is_even for e in seq):
        raise InvalidSequenceError("normalize_even expects an all-even sequence")
    return EnhancedSequence(
        tuple(Entry(2, e.eps.flipped) if e.k == -2 else e for e in seq),
        base=seq.base)


def _rotations(entries: tuple[Entry, ...]) -> Iterator[tuple[Entry, ...]]:
    u = len(entries)
    for t in range(u):
        yield entries[t:] + entries[:t]


def cyc_equivalent(a: EnhancedSequence, b: EnhancedSequence) -> bool:
    """Equality of cyclic words up to rotation and reflection."""
    if len(a) != len(b):
        return False
    target = b.entries
    for rot in _rotations(a.entries):
        if rot == target:
            return True
    for rot in _rotations(tuple(reversed(a.entries))):
        if rot == target:
            return True
    return False


def _entry_sort_key(e: Entry):
    # INF sorts after all integers; S before R.
    return (1, 0, int(e.eps)) if e.is_inf else (0, e.k, int(e.eps))


def dihedral_canonical(entries: tuple[Entry, ...]) -> tuple[Entry, ...]:
    """Lexicographically least word over all rotations and reflections."""
    best = None
    best_key = None
    for word in (entries, tuple(reversed(entries))):
        for rot in _rotations(word):
            key = tuple(_entry_sort_key(e) for e in rot)
            if best_key is None or key < best_key:
                best_key = key
                best = rot
    return best


def canonical_key(seq: EnhancedSequence) -> EnhancedSequence:
    """Canonical representative of an all-even sequence modulo rotation,
    reflection and the 2r = -2s / 2s = -2r identification."""
    norm = normalize_even(seq)
    return EnhancedSequence(dihedral_canonical(norm.entries), base=seq.base)


def is_erasable(ks: Sequence[int]) -> Optional[Pairing]:
    """Witness pairing with k_i + k_sigma(i) = 0 for all i, or None.

    Erasability is equivalent to every value n occurring as often as -n; the
    witness returned is the lexicographically first pairing (each index pairs
    with the earliest available partner).  Odd-length sequences are never
    erasable and yield None.
    """
    ks = tuple(ks)
    if any(k == 0 for k in ks):
        raise InvalidSequenceError("pretzel parameters must be nonzero")
    if len(ks) % 2 != 0:
        return None
    unpaired: dict[int, list[int]] = {}
    pairs = []
    for i, k in enumerate(ks):
        bucket = unpaired.setdefault(-k, [])
        if bucket:
            pairs.append((bucket.pop(0), i))
        else:
            unpaired.setdefault(k, []).append(i)
    if any(v for v in unpaired.values()):
        return None
    return tuple(pairs)


def pairing_respects_orientation(seq: EnhancedSequence, pairing: Pairing) -> bool:
    """Whether eps is constant on every pair of the pairing."""
    seen = set()
    ks = [e.k for e in seq]
    for i, j in pairing:
        if not (0 <= i < len(seq) and 0 <= j < len(seq)) or i == j:
            raise InvalidSequenceError(f"bad pairing pair ({i}, {j})")
        if i in seen or j in seen:
            raise InvalidSequenceError("pairing reuses an index")
        seen.update((i, j))
        if ks[i] + ks[j] != 0:
            raise InvalidSequenceError(
                f"pairing pair ({i}, {j}) does not cancel: {ks[i]} + {ks[j]}")
    if len(seen) != len(seq):
        raise InvalidSequenceError("pairing does not cover the sequence")
    return all(seq[i].eps is seq[j].eps for i, j in pairing)


def orientation_respecting_pairing(seq: EnhancedSequence) -> Optional[Pairing]:
    """A cancelling pairing that also preserves types, if one exists."""
    ks = [e.k for e in seq]
    if len(ks) % 2 != 0:
        return None
    unpaired: dict[tuple[int, TwistType], list[int]] = {}
    pairs = []
    for i, e in enumerate(seq):
        bucket = unpaired.setdefault((-e.k, e.eps), [])
        if bucket:
            pairs.append((bucket.pop(0), i))
        else:
            unpaired.setdefault((e.k, e.eps), []).append(i)
    if any(v for v in unpaired.values()):
        return None
    return tuple(pairs)


def self_delta_normal_form(seq: EnhancedSequence) -> tuple[EnhancedSequence, int]:
    """Standard all-even sequence and twist total m classifying seq up to
    self-delta-equivalence (three or more components only)."""
    mu = component_count(seq.plain())
    if mu < 3:
        raise UnsupportedError("normal form applies to >= 3 components")
    if not is_realizable(seq):
        raise InvalidSequenceError("sequence is not realizable")
    standard = normalize_even(even_subsequence(seq))
    return standard, twist_surplus(seq)
