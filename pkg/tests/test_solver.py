import numpy as np
import pytest

from lgbundle import BundleSpec, CoeffVector, NonGenericParameter, solve_crit, solve_reduced
from lgbundle.solver import relative_distance, resultant

from conftest import HIRZEBRUCH, SUITE
from oracles import bisect, hirzebruch_quartic_roots, random_annulus


def sort_complex(x):
    return np.array(sorted(np.asarray(x), key=lambda v: (round(v.real, 8), round(v.imag, 8))))


def test_hirzebruch_reduced_roots_are_quartic_roots():
    pairs = solve_reduced(HIRZEBRUCH, CoeffVector.unit(HIRZEBRUCH))
    assert len(pairs) == 4
    C = sort_complex([c for c, _ in pairs])
    assert np.allclose(C, sort_complex(hirzebruch_quartic_roots()), atol=1e-12)


def test_product_reduced_roots():
    spec = BundleSpec(2, (0,))
    pairs = solve_reduced(spec, CoeffVector.unit(spec))
    assert len(pairs) == 6
    for C, B in pairs:
        assert abs(C**3 - 1) < 1e-12 and abs(B**2 - 1) < 1e-12


def test_hirzebruch_contains_real_point():
    cs = solve_crit(HIRZEBRUCH, CoeffVector.unit(HIRZEBRUCH))
    z = bisect(lambda x: x**4 + x**3 - 1, 0.0, 1.0)
    d = np.abs(cs.array() - np.array([z, z**2])).max(axis=1)
    assert d.min() < 1e-12
    assert abs(z - 0.8192) < 1e-4 and abs(z**2 - 0.6712) < 1e-3


def test_product_points():
    spec = BundleSpec(1, (0,))
    P = solve_crit(spec, CoeffVector.unit(spec)).array()
    got = {(round(p[0].real), round(p[1].real)) for p in P}
    assert got == {(1, 1), (1, -1), (-1, 1), (-1, -1)}
    assert np.abs(P.imag).max() < 1e-12


def test_separated_at_minus_twelve():
    cs = solve_crit(HIRZEBRUCH, CoeffVector.unit(HIRZEBRUCH, -12))
    P = cs.array()
    assert len(P) == 4
    for i in range(4):
        for j in range(i):
            assert np.abs(P[i] - P[j]).max() > 1e-3


@pytest.mark.parametrize("u", [0.0, -6.0, -20.0])
def test_full_count_and_residual(spec, u):
    cs = solve_crit(spec, CoeffVector.unit(spec, u))
    assert len(cs) == spec.N
    assert cs.max_residual < cs.tol


def test_resolving_with_other_nodes_is_identical(spec):
    rng = np.random.default_rng(5)
    c = CoeffVector.from_array(spec, random_annulus(rng, spec.s + spec.r + 2))
    A = solve_crit(spec, c).array()
    B = solve_crit(spec, c, n_samples=3 * spec.N, radius=1.1).array()
    assert np.abs(A - B).max() < 1e-8


def test_reduction_identity_holds_at_solutions(spec):
    rng = np.random.default_rng(8)
    c = CoeffVector.from_array(spec, random_annulus(rng, spec.s + spec.r + 2))
    P = solve_crit(spec, c).array()
    zc = P[:, :spec.s] * c.c_z
    assert np.allclose(zc, zc[:, :1], rtol=1e-9)


def test_points_are_pairwise_separated(spec):
    P = solve_crit(spec, CoeffVector.unit(spec, -3)).array()
    for i in range(len(P)):
        assert np.all(relative_distance(P[i], np.delete(P, i, axis=0)) > 1e-6)


def test_degenerate_coefficients_raise():
    # P2 = B(B - C) - k2 with k2 -> 0 makes B = 0 a double root family
    spec = HIRZEBRUCH
    c = CoeffVector(np.ones(1), np.ones(1), 1.0, 1e-300)
    with pytest.raises((NonGenericParameter, ArithmeticError)):
        solve_crit(spec, c)


def test_resultant_of_linear_factors():
    # Res(x - 2, x - 5) = -3 with descending coefficients
    assert np.isclose(resultant(np.array([1.0, -2.0]), np.array([1.0, -5.0])), -3)
