"""Acceptance criteria, one CRITERION line per check.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the lines as they
are produced; they are also collected in the terminal summary.  Criteria that
the numerics do not meet are left failing.
"""

from __future__ import annotations

import itertools

import numpy as np
import pytest

from conftest import HIRZEBRUCH, SUITE, labeled
from oracles import fd_jacobian, lg_residual, random_annulus
from lgbundle import (
    BundleSpec,
    CoeffVector,
    NonGenericParameter,
    SegmentPath,
    ToricDivisor,
    build_quiver,
    emit_dot,
    hom_mon_table,
    hom_table,
    jacobian,
    solve_crit,
    theta_plus,
    track_segment,
    verify_composition,
    verify_grid_convergence,
    verify_theorem_B,
    verify_thm42_numeric,
)
from lgbundle.bundle import collection_labels, generators

PRODUCT = [(s, a) for s, a in SUITE if not any(a)]


def product_grid(s: int, r: int) -> np.ndarray:
    """All (zeta^k,...,zeta^k, omega^l,...,omega^l), zeta^(s+1) = omega^(r+1) = 1."""
    zeta = np.exp(2j * np.pi * np.arange(s + 1) / (s + 1))
    omega = np.exp(2j * np.pi * np.arange(r + 1) / (r + 1))
    return np.array([[z] * s + [w] * r for z, w in itertools.product(zeta, omega)])


# -- 1 -----------------------------------------------------------------------


@pytest.mark.parametrize("s, a", PRODUCT, ids=[f"s{s}-a{''.join(map(str, a))}" for s, a in PRODUCT])
def test_criterion_1_product_exactness(s, a, criterion):
    spec = BundleSpec(s, a)
    got = solve_crit(spec, CoeffVector.unit(spec)).array()
    want = product_grid(s, spec.r)
    err = max(np.abs(want - p).max(axis=1).min() for p in got)
    covered = len({int(np.abs(want - p).max(axis=1).argmin()) for p in got}) == len(want)
    ok = criterion(1, f"product exactness {spec}", len(got) == len(want) and covered and err < 1e-10,
                   f"{len(got)} points, max error {err:.2e}")
    assert ok


# -- 2 -----------------------------------------------------------------------


def test_criterion_2_solution_count(spec, criterion):
    rng = np.random.default_rng(2024 + spec.s * 10 + spec.r)
    trials, nongeneric, wrong = 50, 0, 0
    for _ in range(trials):
        c = CoeffVector.from_array(spec, random_annulus(rng, spec.s + spec.r + 2))
        try:
            cs = solve_crit(spec, c)
        except NonGenericParameter:
            nongeneric += 1
            continue
        wrong += len(cs) != spec.N
    rate = nongeneric / trials
    ok = criterion(2, f"solution count {spec}", wrong == 0 and rate < 0.05,
                   f"N={spec.N}, wrong counts {wrong}, non-generic rate {rate:.0%}")
    assert ok


# -- 3 -----------------------------------------------------------------------


def test_criterion_3_grid_convergence(spec, criterion):
    rep = verify_grid_convergence(spec, T_values=(2.0, 6.0, 12.0), tol=1e-3)
    dev = rep.details.get("grid_deviation", [])
    hyp = rep.details.get("hyperplane_residual", [])
    detail = (f"grid deviation {['%.2e' % x for x in dev]}, "
              f"hyperplane {['%.2e' % x for x in hyp]}, "
              f"mismatches {[m['kind'] for m in rep.mismatches]}")
    ok = criterion(3, f"grid convergence {spec}", rep.ok, detail)
    assert ok


# -- 4 -----------------------------------------------------------------------


def random_effective(spec: BundleSpec, rng, count: int = 20) -> list[ToricDivisor]:
    seen: dict[tuple, ToricDivisor] = {}
    while len(seen) < count:
        n = tuple(int(x) for x in rng.integers(0, 3, spec.s + 1))
        m = tuple(int(x) for x in rng.integers(0, 3, spec.r + 1))
        if any(n) or any(m):
            seen.setdefault((n, m), ToricDivisor(n, m))
    return list(seen.values())


def test_criterion_4_monodromy_generators(spec, criterion):
    s, a = spec.s, spec.a
    rep = verify_thm42_numeric(spec, T=12.0, base=labeled(s, a))
    failing = [g for g, ok in rep.details["per_divisor"].items() if not ok]
    carry = all(rep.details["matches_grid_carry"].values())
    ok = criterion(4, f"generator monodromy {spec}", rep.ok,
                   f"{rep.pairs_checked} generators, disagree: {failing or 'none'}, "
                   f"all agree with carried translation: {carry}")
    assert ok


def test_criterion_4_monodromy_random_divisors(spec, criterion):
    s, a = spec.s, spec.a
    rng = np.random.default_rng(4000 + 10 * s + spec.r)
    divisors = random_effective(spec, rng)
    rep = verify_thm42_numeric(spec, T=12.0, divisors=divisors, base=labeled(s, a))
    gens = set(generators(spec))
    extra = {k: v for k, v in rep.details["per_divisor"].items() if k not in gens}
    failing = [k for k, v in extra.items() if not v]
    carry = all(rep.details["matches_grid_carry"].values())
    ok = criterion(4, f"random divisor monodromy {spec}", not failing,
                   f"{len(extra)} divisors, {len(failing)} disagree, "
                   f"all agree with carried translation: {carry}")
    assert ok


# -- 5 -----------------------------------------------------------------------


def test_criterion_5_hom_equals_hom_mon(spec, criterion):
    rep = verify_theorem_B(spec)
    ok = criterion(5, f"Hom = Hom_mon {spec}", rep.ok and rep.pairs_checked == spec.N ** 2,
                   f"{rep.pairs_checked} pairs, {len(rep.mismatches)} mismatches")
    assert ok


def test_criterion_5_hirzebruch_golden_row(criterion):
    labels = collection_labels(HIRZEBRUCH)
    i = labels.index((0, 0))
    row = [int(x) for x in hom_table(HIRZEBRUCH).dims[i]]
    mon = [int(x) for x in hom_mon_table(HIRZEBRUCH)[i]]
    ok = criterion(5, "Hirzebruch row from E_00", row == mon == [1, 2, 3, 5],
                   f"Hom {row}, Hom_mon {mon}")
    assert ok


# -- 6 -----------------------------------------------------------------------


def test_criterion_6_composition(spec, criterion):
    rep = verify_composition(spec)
    ok = criterion(6, f"composition {spec}", rep.ok,
                   f"{rep.pairs_checked} composable triples, {len(rep.mismatches)} mismatches")
    assert ok


# -- 7 -----------------------------------------------------------------------


def test_criterion_7_hirzebruch_theta_plus(criterion):
    want = {(0, 0): 0.0, (0, 1): 1 / 3, (1, 1): 2 / 3, (1, 0): 0.0}
    got = dict(theta_plus(HIRZEBRUCH, 12.0, base=labeled(1, (1,))))
    errs = {}
    for lab, target in want.items():
        d = abs(got[lab][0] - target) % 1.0
        errs[lab] = min(d, 1.0 - d)
    ok = criterion(7, "Hirzebruch first coordinates at u=+12", max(errs.values()) < 1e-3,
                   ", ".join(f"{lab}->{got[lab][0]:.4f}" for lab in want))
    assert ok


# -- 8 -----------------------------------------------------------------------


def test_criterion_8_quiver_counts(criterion):
    q1 = build_quiver(BundleSpec(1, (1,)))
    q3 = build_quiver(BundleSpec(3, (1, 2)))
    fam = q3.arrows_by_family()
    split = [fam["v"], fam["e0"], fam["e1"], fam["e2"]]
    ok = criterion(8, "quiver counts",
                   len(q1.vertices) == 4 and len(q1.arrows) == 7
                   and len(q3.vertices) == 12 and len(q3.arrows) == 54 and split == [36, 8, 6, 4],
                   f"{q1.name}: {len(q1.vertices)}/{len(q1.arrows)}, "
                   f"{q3.name}: {len(q3.vertices)}/{len(q3.arrows)} split {split}")
    assert ok


def test_criterion_8_dot_byte_stable(criterion):
    spec = BundleSpec(3, (1, 2))
    first = emit_dot(build_quiver(spec)).encode()
    again = [emit_dot(build_quiver(BundleSpec(3, (1, 2)))).encode() for _ in range(3)]
    ok = criterion(8, "DOT byte-stable", all(x == first for x in again), f"{len(first)} bytes")
    assert ok


# -- 9 -----------------------------------------------------------------------


def test_criterion_9_jacobian(spec, criterion):
    s, a = spec.s, spec.a
    rng = np.random.default_rng(900 + 10 * s + spec.r)
    worst = 0.0
    for _ in range(100):
        c = CoeffVector.from_array(spec, random_annulus(rng, s + spec.r + 2))
        p = random_annulus(rng, spec.dim)
        J = jacobian(spec, c, p)
        F = fd_jacobian(lambda q: lg_residual(s, a, c.as_array(), q), p)
        worst = max(worst, np.abs(J - F).max() / np.abs(J).max())
    ok = criterion(9, f"Jacobian vs differences {spec}", worst < 1e-6, f"max relative {worst:.2e}")
    assert ok


def test_criterion_9_segment_reversal(spec, criterion):
    start = solve_crit(spec, CoeffVector.unit(spec, 0.0))
    path = SegmentPath(spec, 0.0, -12.0)
    back = track_segment(spec, path.reversed(), track_segment(spec, path, start))
    scale = np.maximum(1.0, np.abs(start.array()))
    err = float((np.abs(back.array() - start.array()) / scale).max())
    ok = criterion(9, f"segment reversal {spec}", err < 1e-8, f"max deviation {err:.2e}")
    assert ok
