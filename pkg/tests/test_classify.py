import itertools

import pytest

from conftest import seq
from pretzellinks.classify import (
    KNOT_UNDETERMINED,
    NOT_SLICE_SHAPE,
    SLICE_SHAPE_2COMP,
    class_key,
    conway_vanishing_predict,
    delta_equivalent,
    enumerate_classes,
    invariants,
    necessary_data,
    necessary_data_match,
    self_delta_necessary,
    self_delta_equivalent,
    self_delta_trivial_2comp,
    slice_shape,
)
from pretzellinks.errors import (
    InvalidSequenceError,
    ResourceLimitError,
    UnsupportedError,
)
from pretzellinks.sequences import EnhancedSequence, R, S, enumerate_enhancements
from pretzellinks.zpoly import ZPoly

A = seq((4, S), (5, R), (6, R), (-2, R), (-3, R))
B = seq((6, R), (2, S), (7, R), (4, S), (-5, R), (-1, R))
K1 = seq((6, R), (-6, R), (1, R), (1, R))
K2 = seq((4, S), (4, R), (1, R), (1, R), (1, R))


# -- invariants ----------------------------------------------------------------


def test_invariants_report_fields():
    rep = invariants(A)
    assert rep.mu == 3
    assert rep.twist_surplus == 1
    assert str(rep.even_key) == "2s,4s,6r"
    assert rep.a_lower == rep.conway.coefficient(2)
    assert rep.a_upper == rep.conway.coefficient(4)
    assert rep.a_upper_corrected == \
        rep.a_upper - rep.a_lower * rep.component_a2_sum
    rep2 = invariants(K1)
    assert rep2.mu == 2
    assert (rep2.conway.coefficient(1), rep2.conway.coefficient(3)) == (0, -9)
    assert all(c == ZPoly.one() for c in rep2.component_conways)
    rep3 = invariants(seq((1, S), (1, S), (1, S)))
    assert rep3.mu == 1 and rep3.twist_surplus == 3
    assert rep3.conway == ZPoly((1, 0, 1))
    assert rep3.even_key is None


def test_invariants_a2_sum_vanishes_for_trivial_components():
    rep = invariants(K2)
    assert all(c == ZPoly.one() for c in rep.component_conways)
    assert rep.component_a2_sum == 0


# -- delta equivalence ----------------------------------------------------------


def test_delta_equivalent_examples():
    assert delta_equivalent(seq((2, S), (3, R), (3, R)), seq((4, S), (1, R), (1, R)))
    assert not delta_equivalent(seq((1, S), (1, S)),
                                seq((1, S), (1, S), (1, S), (1, S)))
    assert delta_equivalent(A, A)


def test_delta_needs_matching_linking_pattern():
    # same mu, different linking numbers
    assert not delta_equivalent(seq((2, S), (2, S)), seq((4, S), (4, S)))
    # dihedral correspondence is allowed
    assert delta_equivalent(seq((2, S), (4, S), (2, S)),
                            seq((4, S), (2, S), (2, S)))


# -- self-delta equivalence -------------------------------------------------------


def test_self_delta_fixture_pair():
    res = self_delta_equivalent(A, B)
    assert res.equivalent and res.kind == "even-key"
    key, surplus, transform = res.certificate
    assert key == "2s,4s,6r" and surplus == 1
    assert transform[0] in ("rotation", "reflection")


def test_self_delta_two_component_pair():
    assert self_delta_equivalent(K1, K2)
    assert not self_delta_equivalent(K1, seq((2, S), (-2, S)))


def test_self_delta_key_mismatch():
    assert not self_delta_equivalent(seq((2, S), (4, S), (6, S)),
                                     seq((2, S), (4, S), (8, S)))
    # same even key but different twist surplus
    assert not self_delta_equivalent(seq((2, S), (4, S), (6, S)),
                                     seq((2, S), (4, S), (6, S), (1, R), (1, R)))


def test_self_delta_knots_always_equivalent():
    assert self_delta_equivalent(seq((1, S), (1, S), (1, S)),
                                 seq((2, S), (3, R), (3, R)))


def test_self_delta_rejects_unrealizable():
    with pytest.raises(InvalidSequenceError):
        self_delta_equivalent(seq((2, R), (3, R), (4, R)), A)


def test_self_delta_respects_twist_spread():
    # spreading an odd entry into unit twists is a self-delta reduction
    a = seq((-2, S), (2, R), (-3, R))
    b = seq((-2, S), (2, R), (-1, R), (-1, R), (-1, R))
    assert self_delta_equivalent(a, b)


def test_self_delta_is_equivalence_on_small_classes():
    pool = []
    for ks in itertools.product([-2, -1, 1, 2], repeat=3):
        pool.extend(enumerate_enhancements(ks))
    pool = pool[:40]
    for x in pool[:10]:
        assert self_delta_equivalent(x, x)
    for x in pool[:8]:
        for y in pool[:8]:
            assert bool(self_delta_equivalent(x, y)) == \
                bool(self_delta_equivalent(y, x))


# -- triviality and slice shapes ---------------------------------------------------


def test_self_delta_trivial_examples():
    assert self_delta_trivial_2comp(seq((4, R), (-4, R), (1, R), (-3, R),
                                        (-5, R), (7, R)))
    assert not self_delta_trivial_2comp(K1)
    assert self_delta_trivial_2comp(seq((2, S), (-2, S)))
    with pytest.raises(UnsupportedError):
        self_delta_trivial_2comp(seq((1, S), (1, S), (1, S)))


def test_slice_shape_examples():
    assert slice_shape(seq((3, R), (-3, R), (5, R), (-5, R))).verdict == \
        SLICE_SHAPE_2COMP
    assert slice_shape(K1).verdict == NOT_SLICE_SHAPE
    assert slice_shape(seq((2, S), (3, R), (3, R))).verdict == KNOT_UNDETERMINED
    assert slice_shape(seq((2, S), (-2, S))).verdict == SLICE_SHAPE_2COMP
    assert slice_shape(seq((2, S), (4, S))).verdict == NOT_SLICE_SHAPE


def test_conway_vanishing_examples():
    assert conway_vanishing_predict(seq((3, R), (-3, R), (5, R), (-5, R)))
    assert not conway_vanishing_predict(seq((2, S), (-2, R), (2, S), (-2, R)))
    assert conway_vanishing_predict(seq((2, S), (-2, S)))
    assert not conway_vanishing_predict(seq((1, S), (1, S), (1, S)))


# -- necessary conditions ------------------------------------------------------------


def test_self_delta_necessary_on_fixture_pair():
    assert self_delta_necessary(A, B)
    assert self_delta_necessary(A, A)


def test_necessary_data_handles_non_pretzel_inputs():
    # 3-component trivial link vs Hopf-plus-unknot: identical coefficient
    # data (all zero) but different linking numbers, so the necessary test
    # passes while delta-equivalence fails.  Supplied as hand-coded data
    # since neither is a nonzero-parameter pretzel.
    trivial3 = (3, 0, 0)
    hopf_plus_unknot = (3, 0, 0)
    assert necessary_data_match(trivial3, hopf_plus_unknot)
    lk_trivial = ((0, 0, 0), (0, 0, 0), (0, 0, 0))
    lk_hopf = ((0, 1, 0), (1, 0, 0), (0, 0, 0))
    assert lk_trivial != lk_hopf


def test_necessary_mismatched_mu_is_false():
    assert not self_delta_necessary(seq((1, S), (1, S)), seq((2, S), (2, S), (2, S)))


def test_equivalent_pairs_satisfy_necessary_conditions():
    pairs = [(A, B), (K1, K2)]
    for x, y in pairs:
        assert self_delta_equivalent(x, y)
        assert self_delta_necessary(x, y)


# -- enumeration ------------------------------------------------------------------


def test_enumerate_classes_small():
    table = enumerate_classes(2, 2, components=2)
    by_key = dict(table.classes)
    assert "1s,1s" in by_key["a1=-1;c3=0"]
    assert "2s,-2s" in by_key["a1=0;c3=0"]
    assert "-2s,2s" in by_key["a1=0;c3=0"]


def test_enumerate_classes_groups_fixture_pair():
    table = enumerate_classes(2, 2)
    assert all(r.mu == class_key(EnhancedSequence.parse(r.sequence))[0]
               for r in table.rows[:10])
    k1_key = class_key(K1)[1]
    k2_key = class_key(K2)[1]
    assert k1_key == k2_key == "a1=0;c3=-9"


def test_enumerate_classes_resource_limit():
    with pytest.raises(ResourceLimitError):
        enumerate_classes(8, 9)


def test_enumerate_classes_csv_and_json():
    table = enumerate_classes(1, 2)
    text = table.to_csv()
    assert text.splitlines()[0] == "sequence,mu,key,surplus,a1,a3,conway"
    import json
    data = json.loads(table.to_json())
    assert set(data) == {"rows", "classes"}


def test_class_members_share_invariant_keys():
    table = enumerate_classes(3, 2)
    for key, members in table.classes:
        for m in members[:3]:
            s = EnhancedSequence.parse(m)
            assert class_key(s)[1] == key


def append_unit_twists(standard, m):
    from pretzellinks.sequences import Entry
    unit = Entry(1 if m > 0 else -1, R)
    return EnhancedSequence(standard.entries + (unit,) * abs(m))


def test_standard_links_with_equal_keys_agree():
    # Standard sequences (all even, no -2) equal up to rotation/reflection,
    # with the same number of appended unit twists, give the same link data.
    from pretzellinks.diagrams import oracle_conway
    base = seq((2, S), (4, S), (6, R))
    variants = [
        EnhancedSequence(base.entries[1:] + base.entries[:1]),
        EnhancedSequence(tuple(reversed(base.entries))),
    ]
    for m in (1, -1, 3):
        reference = append_unit_twists(base, m)
        for v in variants:
            other = append_unit_twists(v, m)
            assert oracle_conway(reference) == oracle_conway(other)
            assert delta_equivalent(reference, other)
            assert self_delta_equivalent(reference, other)
