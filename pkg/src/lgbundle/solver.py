"""All critical points of the LG system at a given coefficient vector.

The full system is reduced to two polynomials in (C, B) (see
:class:`lgbundle.lg_system.ReducedSystem`).  Before elimination both
variables are rescaled, C = lam C', B = mu B' with

    mu^{r+1} = k2,   lam^{s+1} = k1 mu^{sum a},   nu = lam / mu,

which turns the pair into

    Q1 = C'^{s+1} - prod_j (B' - a_j nu C')^{a_j},   Q2 = B' prod_j (B' - a_j nu C') - 1.

Only nu is left, and for the e^u family nu = e^{u/(s+1)}, so the scaled roots
stay O(1) as u -> -infinity.

Several critical points can share the same C (always so when a = 0), so B'
is eliminated against the sheared coordinate X = C' + SHEAR * B' instead of
C' itself.  The Sylvester resultant is sampled at scaled roots of unity,
interpolated by FFT and solved with companion-matrix eigenvalues.
"""

from __future__ import annotations

from math import comb

import numpy as np

from .bundle import BundleSpec
from .errors import NewtonDivergence, NonGenericParameter
from .lg_system import (
    DEFAULT_TOL,
    SEPARATION,
    BivariatePoly,
    CoeffVector,
    CritPoint,
    CritSet,
    _reduced_polys,
    lift,
    log_jacobian,
    newton,
    reduce_point,
    reduction_constants,
    sup_residual,
)

SAMPLE_RADIUS = 1.37
SHEAR = 0.5773 + 0.2113j


def _shear(coef: np.ndarray, beta: complex) -> np.ndarray:
    """Coefficients of P(X - beta*B, B) from those of P(C, B)."""
    deg = coef.shape[0] + coef.shape[1] - 2
    out = np.zeros((deg + 1, deg + 1), dtype=complex)
    for i in range(coef.shape[0]):
        # (X - beta B)^i = sum_t binom(i, t) X^{i-t} (-beta B)^t
        for t in range(i + 1):
            w = comb(i, t) * (-beta) ** t
            for j in range(coef.shape[1]):
                if coef[i, j] != 0:
                    out[i - t, j + t] += w * coef[i, j]
    return out


def sylvester_matrix(f: np.ndarray, g: np.ndarray) -> np.ndarray:
    """Sylvester matrix of two univariate polynomials (descending coefficients)."""
    m, n = len(f) - 1, len(g) - 1
    size = m + n
    S = np.zeros((size, size), dtype=complex)
    for i in range(n):
        S[i, i:i + m + 1] = f
    for i in range(m):
        S[n + i, i:i + n + 1] = g
    return S


def resultant(f: np.ndarray, g: np.ndarray) -> complex:
    m, n = len(f) - 1, len(g) - 1
    if m == 0:
        return complex(f[0] ** n)
    if n == 0:
        return complex(g[0] ** m)
    return complex(np.linalg.det(sylvester_matrix(f, g)))


def scaling(spec: BundleSpec, c: CoeffVector) -> tuple[complex, complex, complex]:
    """(lam, mu, nu) of the normalising substitution."""
    k1, k2 = reduction_constants(spec, c)
    mu = k2 ** (1.0 / (spec.r + 1))
    lam = (k1 * mu ** spec.sum_a) ** (1.0 / (spec.s + 1))
    return lam, mu, lam / mu


def _b_poly(P, x, degree: int) -> np.ndarray:
    """Descending B-coefficients of P(x, B), truncated to the known degree."""
    return P.in_B(x)[:degree + 1][::-1]


def _eliminate(spec: BundleSpec, Q1, Q2, n_samples: int, radius: float) -> np.ndarray:
    """Coefficients (ascending) of Res_B(Q1, Q2) as a polynomial in X."""
    N = spec.N
    nodes = radius * np.exp(2j * np.pi * np.arange(n_samples) / n_samples)
    vals = np.empty(n_samples, dtype=complex)
    for k, x in enumerate(nodes):
        vals[k] = resultant(_b_poly(Q1, x, spec.s + 1), _b_poly(Q2, x, spec.r + 1))
    coef = np.fft.fft(vals) / n_samples
    coef = coef / radius ** np.arange(n_samples)
    return coef[:N + 1]


def _polish_pair(Q1, Q2, C, B, iters: int = 30):
    dQ1C, dQ1B, dQ2C, dQ2B = Q1.dC(), Q1.dB(), Q2.dC(), Q2.dB()
    for _ in range(iters):
        F = np.array([Q1(C, B), Q2(C, B)])
        J = np.array([[dQ1C(C, B), dQ1B(C, B)], [dQ2C(C, B), dQ2B(C, B)]])
        try:
            d = np.linalg.solve(J, -F)
        except np.linalg.LinAlgError:
            break
        C, B = C + d[0], B + d[1]
        if abs(d).max() < 1e-15 * max(1.0, abs(C), abs(B)):
            break
    return C, B


def solve_reduced(spec: BundleSpec, c: CoeffVector, n_samples: int | None = None,
                  radius: float = SAMPLE_RADIUS) -> list[tuple[complex, complex]]:
    """Isolated roots (C, B) of the reduced system with nonzero lifts.

    Raises NonGenericParameter if fewer than N distinct roots survive.
    """
    N = spec.N
    if n_samples is None:
        n_samples = 2 * N
    if n_samples < N + 1:
        raise ValueError(f"need at least N + 1 = {N + 1} interpolation nodes")
    lam, mu, nu = scaling(spec, c)
    Q1, Q2 = _reduced_polys(spec, 1.0, 1.0, nu)
    S1 = BivariatePoly(_shear(Q1.coef, SHEAR))
    S2 = BivariatePoly(_shear(Q2.coef, SHEAR))

    res = _eliminate(spec, S1, S2, n_samples, radius)
    if abs(res[N]) < 1e-12 * np.abs(res).max():
        raise NonGenericParameter("resultant lost degree; coefficients too degenerate")
    Xroots = np.roots(res[::-1])

    pairs = []
    for X in Xroots:
        Bcands = np.roots(_b_poly(S2, X, spec.r + 1))
        Bs = Bcands[np.argmin(np.abs(S1(X, Bcands)))]
        Cs, Bs = _polish_pair(Q1, Q2, X - SHEAR * Bs, Bs)
        pairs.append((Cs, Bs))

    out: list[tuple[complex, complex]] = []
    a = np.asarray(spec.a)
    for Cs, Bs in pairs:
        C, B = complex(lam * Cs), complex(mu * Bs)
        scale = max(abs(C), abs(B))
        if abs(C) < 1e-14 * scale or np.any(np.abs(B - a * C) < 1e-14 * scale):
            continue
        if any(abs(Cs - c2 / lam) < SEPARATION and abs(Bs - b2 / mu) < SEPARATION
               for c2, b2 in out):
            continue
        out.append((C, B))
    if len(out) < N:
        raise NonGenericParameter(
            f"only {len(out)} of {N} reduced roots are distinct and nondegenerate"
        )
    return _canonical(out)


def _canonical(pairs):
    arr = np.array(pairs, dtype=complex).reshape(-1, 2)
    sC = max(np.abs(arr[:, 0]).max(), 1e-300)
    sB = max(np.abs(arr[:, 1]).max(), 1e-300)

    def key(pair):
        C, B = pair
        return tuple(np.round([C.real / sC, C.imag / sC, B.real / sB, B.imag / sB], 9))

    return sorted(pairs, key=key)


def canonical_order(spec: BundleSpec, c: CoeffVector, points) -> list[int]:
    """Index order sorting points by (Re C, Im C, Re B, Im B)."""
    pairs = [reduce_point(spec, c, p) for p in points]
    ordered = _canonical(pairs)
    used = set()
    order = []
    for pr in ordered:
        for i, q in enumerate(pairs):
            if i not in used and q == pr:
                used.add(i)
                order.append(i)
                break
    return order


def relative_distance(p, q) -> np.ndarray:
    """Sup over coordinates of |p_i - q_i| / max(|p_i|, |q_i|)."""
    p, q = np.asarray(p), np.asarray(q)
    return (np.abs(p - q) / np.maximum(np.abs(p), np.abs(q))).max(axis=-1)


def _dedupe(points: np.ndarray, sep: float) -> list[int]:
    keep: list[int] = []
    for i, p in enumerate(points):
        if all(relative_distance(p, points[j]) >= sep for j in keep):
            keep.append(i)
    return keep


def solve_crit(spec: BundleSpec, c: CoeffVector, tol: float = DEFAULT_TOL,
               n_samples: int | None = None, radius: float = SAMPLE_RADIUS) -> CritSet:
    """All N critical points, Newton-refined and canonically ordered."""
    pairs = solve_reduced(spec, c, n_samples=n_samples, radius=radius)
    P = np.array([lift(spec, c, C, B).coords for C, B in pairs])
    P, ok = newton(spec, c, P, tol=tol)
    if not np.all(ok):
        bad = int(np.flatnonzero(~ok)[0])
        raise NewtonDivergence(
            f"Newton refinement failed at reduced root {pairs[bad]}", point=P[bad]
        )
    keep = _dedupe(P, SEPARATION)
    if len(keep) < spec.N:
        raise NonGenericParameter(f"only {len(keep)} of {spec.N} critical points are distinct")
    P = P[keep]
    sv = np.linalg.svd(log_jacobian(spec, c, P), compute_uv=False)
    if np.any(sv[:, -1] < 1e-12 * sv[:, 0]):
        raise NonGenericParameter("singular Jacobian at a critical point")
    P = P[canonical_order(spec, c, P)]
    res = sup_residual(spec, c, P)
    pts = tuple(CritPoint.from_coords(spec, p, r) for p, r in zip(P, res))
    return CritSet(spec, c, pts, tol)
