"""Equivalence deciders and invariant reports for pretzel links.

Delta-equivalence is decided by component count and linking numbers;
self-delta-equivalence by the canonical even-subsequence key and twist surplus for
three or more components, and for two components by the complete coefficient
invariants (a1, a3 - a1 * sum of component a2), the correction being nonzero
exactly when an odd run side-closes into a nontrivial torus-knot component.
"""

from __future__ import annotations

import csv
import io
import itertools
import json
from dataclasses import dataclass
from typing import Optional

from . import diagrams, polynomials, sequences
from .errors import (
    InternalConsistencyError,
    InvalidSequenceError,
    ResourceLimitError,
    UnsupportedError,
)
from .sequences import EnhancedSequence, Pairing
from .zpoly import ZPoly


@dataclass(frozen=True)
class InvariantReport:
    """Bundle of the invariants used by the deciders."""

    sequence: EnhancedSequence
    mu: int
    linking: tuple[tuple[int, ...], ...]
    conway: ZPoly
    a_lower: int                      # coefficient mu - 1
    a_upper: int                      # coefficient mu + 1
    component_conways: tuple[ZPoly, ...]
    component_a2_sum: int
    a_upper_corrected: int        # a_upper - a_lower * sum(a2 of components)
    twist_surplus: int
    even_key: Optional[EnhancedSequence]


def invariants(seq: EnhancedSequence) -> InvariantReport:
    """Compute the full invariant report (oracle-backed, closed forms checked)."""
    diagram = diagrams.build_diagram(seq)
    mu = diagram.ncomponents
    nabla = diagrams._conway_of(diagram)
    comps = tuple(diagrams.component_conway(seq, j) for j in range(1, mu + 1))
    a2_sum = sum(c.coefficient(2) for c in comps)
    a_lower = nabla.coefficient(mu - 1)
    a_upper = nabla.coefficient(mu + 1)
    if mu == 2:
        closed = polynomials.a1a3(seq)
        if closed != (nabla.coefficient(1), nabla.coefficient(3)):
            raise InternalConsistencyError(
                f"closed forms disagree with the oracle on {seq}: "
                f"{closed} vs {(nabla.coefficient(1), nabla.coefficient(3))}")
    has_even = any(e.is_even for e in seq)
    key = sequences.canonical_key(sequences.even_subsequence(seq)) if has_even else None
    return InvariantReport(
        sequence=seq, mu=mu, linking=diagrams.linking_matrix(diagram),
        conway=nabla, a_lower=a_lower, a_upper=a_upper,
        component_conways=comps, component_a2_sum=a2_sum,
        a_upper_corrected=a_upper - a_lower * a2_sum,
        twist_surplus=sequences.twist_surplus(seq), even_key=key)


# ---------------------------------------------------------------------------
# delta-equivalence


def _dihedral_variants(seq: EnhancedSequence):
    ent = seq.entries
    u = len(ent)
    words = {ent[t:] + ent[:t] for t in range(u)}
    rev = tuple(reversed(ent))
    words.update(rev[t:] + rev[:t] for t in range(u))
    return [EnhancedSequence(w, base=seq.base) for w in sorted(words, key=str)]


def delta_equivalent(a: EnhancedSequence, b: EnhancedSequence) -> bool:
    """Same component count and matching linking numbers under some
    cyclic/reflected component correspondence."""
    da = diagrams.build_diagram(a)
    db = diagrams.build_diagram(b)
    if da.ncomponents != db.ncomponents:
        return False
    if da.ncomponents == 1:
        return True
    lk_a = diagrams.linking_matrix(da)
    return any(diagrams.linking_matrix(diagrams.build_diagram(v)) == lk_a
               for v in _dihedral_variants(b))


# ---------------------------------------------------------------------------
# self-delta-equivalence


@dataclass(frozen=True)
class SelfDeltaResult:
    """Decision plus a certificate of how the sequences were matched."""

    equivalent: bool
    kind: str                      # 'knot', 'two-component', 'even-key'
    certificate: Optional[tuple] = None

    def __bool__(self) -> bool:
        return self.equivalent


def self_delta_equivalent(a: EnhancedSequence, b: EnhancedSequence) -> SelfDeltaResult:
    """Decide self-delta-equivalence of two realizable pretzel links."""
    for s in (a, b):
        if not sequences.is_realizable(s):
            raise InvalidSequenceError(f"{s} admits no oriented diagram")
    mu_a = sequences.component_count(a.plain())
    mu_b = sequences.component_count(b.plain())
    if mu_a != mu_b:
        return SelfDeltaResult(False, "component-count",
                               certificate=(mu_a, mu_b))
    if mu_a == 1:
        return SelfDeltaResult(True, "knot")
    if mu_a == 2:
        inv_a = _two_component_invariants(a)
        inv_b = _two_component_invariants(b)
        return SelfDeltaResult(inv_a == inv_b, "two-component",
                               certificate=(inv_a, inv_b))
    key_a = sequences.canonical_key(sequences.even_subsequence(a))
    key_b = sequences.canonical_key(sequences.even_subsequence(b))
    surplus_a, surplus_b = sequences.twist_surplus(a), sequences.twist_surplus(b)
    if key_a.entries != key_b.entries or surplus_a != surplus_b:
        return SelfDeltaResult(False, "even-key",
                               certificate=((str(key_a), surplus_a), (str(key_b), surplus_b)))
    match = _matching_transform(a, b)
    return SelfDeltaResult(True, "even-key",
                           certificate=(str(key_a), surplus_a, match))


def _checked_a1a3(seq: EnhancedSequence) -> tuple[int, int]:
    closed = polynomials.a1a3(seq)
    nabla = polynomials.twistreduce_conway(seq)
    if closed != (nabla.coefficient(1), nabla.coefficient(3)):
        raise InternalConsistencyError(
            f"closed forms disagree with twist reduction on {seq}")
    return closed


def _two_component_invariants(seq: EnhancedSequence) -> tuple[int, int]:
    """The complete self-delta invariants of a 2-component link:
    (a1, a3 - a1 * total a2 of the components)."""
    a1, a3 = _checked_a1a3(seq)
    return a1, a3 - a1 * polynomials.component_a2_total(seq)


def _matching_transform(a: EnhancedSequence, b: EnhancedSequence):
    """Rotation/reflection aligning the normalized even subsequences."""
    ea = sequences.normalize_even(sequences.even_subsequence(a)).entries
    eb = sequences.normalize_even(sequences.even_subsequence(b)).entries
    u = len(ea)
    for t in range(u):
        if ea[t:] + ea[:t] == eb:
            return ("rotation", t)
    rev = tuple(reversed(ea))
    for t in range(u):
        if rev[t:] + rev[:t] == eb:
            return ("reflection", t)
    raise InternalConsistencyError("equal canonical keys but no dihedral match")


def self_delta_trivial_2comp(seq: EnhancedSequence) -> bool:
    """Whether a 2-component pretzel is self-delta-equivalent to the trivial
    2-component link (a1 = a3 = 0)."""
    if sequences.component_count(seq.plain()) != 2:
        raise UnsupportedError("triviality test is for 2-component pretzels")
    return _checked_a1a3(seq) == (0, 0)


# ---------------------------------------------------------------------------
# necessary conditions


def necessary_data(report: InvariantReport) -> tuple[int, int, int]:
    """(mu, a_{mu-1}, a_{mu+1} - a_{mu-1}*sum a2) as used by the necessary test."""
    return (report.mu, report.a_lower, report.a_upper_corrected)


def necessary_data_match(x: tuple[int, int, int], y: tuple[int, int, int]) -> bool:
    """Compare necessary-condition data (not sufficient in general)."""
    return x[0] == y[0] and x[1] == y[1] and x[2] == y[2]


def self_delta_necessary(a: EnhancedSequence, b: EnhancedSequence) -> bool:
    """Necessary condition for self-delta-equivalence from coefficient data."""
    ra, rb = invariants(a), invariants(b)
    if ra.mu != rb.mu:
        return False
    return necessary_data_match(necessary_data(ra), necessary_data(rb))


# ---------------------------------------------------------------------------
# slice shapes and vanishing


KNOT_UNDETERMINED = "knot-undetermined"
SLICE_SHAPE_2COMP = "slice-shape-2comp"
NOT_SLICE_SHAPE = "not-slice-shape"


@dataclass(frozen=True)
class SliceShape:
    verdict: str
    pairing: Optional[Pairing] = None


def slice_shape(seq: EnhancedSequence) -> SliceShape:
    """Classify against the possible shapes of slice pretzel links.

    Knots are out of scope (undetermined).  A 2-component pretzel has slice
    shape iff its length is even, its plain sequence is erasable, and every
    parameter has absolute value at least 2; such links must also be
    self-delta-trivial, which is verified here.
    """
    mu = sequences.component_count(seq.plain())
    if mu == 1:
        return SliceShape(KNOT_UNDETERMINED)
    if mu != 2:
        return SliceShape(NOT_SLICE_SHAPE)
    ks = seq.plain()
    if len(ks) % 2 != 0 or any(abs(k) < 2 for k in ks):
        return SliceShape(NOT_SLICE_SHAPE)
    pairing = sequences.is_erasable(ks)
    if pairing is None:
        return SliceShape(NOT_SLICE_SHAPE)
    if not self_delta_trivial_2comp(seq):
        raise InternalConsistencyError(
            f"slice-shaped {seq} is not self-delta-trivial")
    return SliceShape(SLICE_SHAPE_2COMP, pairing)


def conway_vanishing_predict(seq: EnhancedSequence) -> bool:
    """Predict a vanishing Conway polynomial from an erasable, type-respecting
    pairing; the prediction is verified against the oracle before returning."""
    if len(seq) % 2 != 0:
        return False
    pairing = sequences.orientation_respecting_pairing(seq)
    if pairing is None:
        return False
    if not diagrams.oracle_conway(seq).is_zero():
        raise InternalConsistencyError(
            f"{seq} has a type-respecting cancelling pairing but nonzero Conway")
    return True


# ---------------------------------------------------------------------------
# bulk classification


@dataclass(frozen=True)
class ClassRow:
    sequence: str
    mu: int
    key: str
    surplus: int
    a1: int
    a3: int
    conway: str


@dataclass(frozen=True)
class ClassTable:
    rows: tuple[ClassRow, ...]
    classes: tuple[tuple[str, tuple[str, ...]], ...]

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf)
        writer.writerow(["sequence", "mu", "key", "surplus", "a1", "a3", "conway"])
        for r in self.rows:
            writer.writerow([r.sequence, r.mu, r.key, r.surplus, r.a1, r.a3, r.conway])
        return buf.getvalue()

    def to_json(self) -> str:
        return json.dumps({
            "rows": [r.__dict__ for r in self.rows],
            "classes": {k: list(v) for k, v in self.classes},
        }, indent=2)


def class_key(seq: EnhancedSequence) -> tuple[int, str]:
    """(mu, textual class key) for the self-delta class of the sequence."""
    mu = sequences.component_count(seq.plain())
    if mu == 1:
        return mu, "knot"
    if mu == 2:
        a1, c3 = _two_component_invariants(seq)
        return mu, f"a1={a1};c3={c3}"
    key = sequences.canonical_key(sequences.even_subsequence(seq))
    return mu, f"even={key};surplus={sequences.twist_surplus(seq)}"


def enumerate_classes(max_u: int, max_twist: int,
                      components: Optional[int] = None,
                      limit: int = 400_000) -> ClassTable:
    """Classify every realizable sequence within the bounds.

    Raises ResourceLimitError (before doing any work) when the bound volume
    exceeds `limit` enhanced sequences.
    """
    if max_u < 1 or max_twist < 1:
        raise InvalidSequenceError("bounds must be positive")
    volume = sum((2 * max_twist) ** u * 2 ** u for u in range(1, max_u + 1))
    if volume > limit:
        raise ResourceLimitError(
            f"bounds enumerate up to {volume} sequences (limit {limit})")
    values = [k for k in range(-max_twist, max_twist + 1) if k != 0]
    rows = []
    classes: dict[str, list[str]] = {}
    for u in range(1, max_u + 1):
        for ks in itertools.product(values, repeat=u):
            for seq in sequences.enumerate_enhancements(ks):
                mu, key = class_key(seq)
                if components is not None and mu != components:
                    continue
                nabla = polynomials.twistreduce_conway(seq)
                rows.append(ClassRow(
                    sequence=str(seq), mu=mu, key=key,
                    surplus=sequences.twist_surplus(seq),
                    a1=nabla.coefficient(1), a3=nabla.coefficient(3),
                    conway=str(nabla)))
                classes.setdefault(key, []).append(str(seq))
    rows.sort(key=lambda r: (r.mu, r.key, r.sequence))
    ordered = tuple(sorted(
        ((k, tuple(sorted(v))) for k, v in classes.items()),
        key=lambda item: item[0]))
    return ClassTable(rows=tuple(rows), classes=ordered)
