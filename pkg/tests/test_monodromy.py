import itertools

import pytest

from lgbundle import BundleSpec, ToricDivisor, act, div_plus, hom_mon_dimension, hom_table
from lgbundle.bundle import collection_labels, parse_divisor
from lgbundle.monodromy import (
    act_grid,
    act_unreduced,
    hom_mon_table,
    hom_mon_witnesses,
    verify_composition,
    verify_theorem_B,
    verify_thm42_numeric,
)

from conftest import HIRZEBRUCH, labeled
from oracles import brute_div_plus


def test_act_examples():
    for s, a in [(1, (1,)), (3, (1, 2))]:
        spec = BundleSpec(s, a)
        assert act(spec, ToricDivisor.generator(spec, "v0"), (0, 0)) == (1, 0)
    spec = BundleSpec(3, (1, 2))
    assert act(spec, ToricDivisor.generator(spec, "e2"), (2, 1)) == (0, 2)
    for p in collection_labels(spec):
        assert act(spec, ToricDivisor.zero(spec), p) == p


def test_grid_carry_adds_sum_a():
    spec = BundleSpec(3, (1, 2))
    e0 = ToricDivisor.generator(spec, "e0")
    assert act(spec, e0, (1, 2)) == (1, 0)
    assert act_grid(spec, e0, (1, 2)) == (0, 0)  # 1 + 3 mod 4


def test_div_plus_hirzebruch():
    assert len(div_plus(HIRZEBRUCH, (0, 0))) == 11
    assert div_plus(HIRZEBRUCH, (1, 1)) == [ToricDivisor.zero(HIRZEBRUCH)]


def test_corner_has_only_zero(spec):
    assert div_plus(spec, (spec.s, spec.r)) == [ToricDivisor.zero(spec)]


def test_div_plus_against_brute_force(spec):
    for k, l in collection_labels(spec):
        got = {(D.n, D.m) for D in div_plus(spec, (k, l))}
        assert len(got) == len(div_plus(spec, (k, l)))
        assert got == brute_div_plus(spec.s, spec.a, k, l)


def test_hom_mon_examples():
    W = hom_mon_witnesses(HIRZEBRUCH, (0, 0), (0, 1))
    want = {parse_divisor(HIRZEBRUCH, t) for t in ("e0", "e1,v0", "e1,v1")}
    assert set(W) == want
    assert [str(D) for D in hom_mon_witnesses(HIRZEBRUCH, (1, 0), (0, 1))] == ["V(e1)"]


def test_hom_mon_invariants(spec):
    labels = collection_labels(spec)
    T = hom_mon_table(spec)
    for i, p in enumerate(labels):
        assert hom_mon_dimension(spec, p, p) == 1
        assert all(T[i, j] == 0 for j in range(i))
        assert T[i].sum() == len(div_plus(spec, p))
        for D in div_plus(spec, p):
            assert act(spec, D, p) == act_unreduced(spec, D, p) == act_grid(spec, D, p)


def test_hom_equals_hom_mon(spec):
    rep = verify_theorem_B(spec)
    assert rep.ok and rep.pairs_checked == spec.N ** 2


def test_hom_check_covers_all_pairs():
    assert verify_theorem_B(BundleSpec(3, (1, 2))).pairs_checked == 144
    assert verify_theorem_B(HIRZEBRUCH).pairs_checked == 16


def test_strict_bounds_lose_the_first_column():
    rep = verify_theorem_B(HIRZEBRUCH, strict=True)
    assert not rep.ok
    assert hom_mon_dimension(HIRZEBRUCH, (0, 0), (0, 1), strict=True) == 0
    assert hom_table(HIRZEBRUCH)[(0, 0), (0, 1)] == 3


def test_composition(spec):
    rep = verify_composition(spec)
    assert rep.ok and rep.pairs_checked > 0


def test_composition_hirzebruch_examples():
    for mid, dim in [((1, 0), 2 * 3), ((0, 1), 3 * 2)]:
        A = hom_mon_witnesses(HIRZEBRUCH, (0, 0), mid)
        B = hom_mon_witnesses(HIRZEBRUCH, mid, (1, 1))
        target = set(hom_mon_witnesses(HIRZEBRUCH, (0, 0), (1, 1)))
        sums = [x + y for x in A for y in B]
        assert len(sums) == dim and set(sums) <= target and len(target) == 5


def test_identity_composition_embeds(spec):
    labels = collection_labels(spec)
    zero = ToricDivisor.zero(spec)
    for p, q in itertools.product(labels, repeat=2):
        W = hom_mon_witnesses(spec, p, q)
        assert [zero + D for D in W] == W


def test_numeric_report_records_both_rules():
    rep = verify_thm42_numeric(HIRZEBRUCH, 12.0, base=labeled(1, (1,)))
    per, carry = rep.details["per_divisor"], rep.details["matches_grid_carry"]
    assert per["v0"] and per["v1"]
    assert all(carry.values())
