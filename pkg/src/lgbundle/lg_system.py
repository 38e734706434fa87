"""The logarithmic critical-point system of the LG potential of X_a.

For coefficients c the potential is

    f = sum c_z[i] z_i + sum c_w[j] w_j + c_v0 * W/Z + c_e0 / prod(w),

with W = prod w_j^{a_j} and Z = prod z_i.  Writing R = c_v0 W/Z and
Q = c_e0/prod(w), the system z_i df/dz_i = 0, w_j df/dw_j = 0 reads

    c_z[i] z_i - R = 0,
    c_w[j] w_j + a_j R - Q = 0.

Points are complex arrays ``(z_1..z_s, w_1..w_r)``; all evaluation routines
broadcast over leading axes so a whole critical set can be processed at once.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Optional, Sequence

import numpy as np
from numpy.polynomial import polynomial as npoly

from .bundle import BundleSpec
from .errors import DegenerateLift, ZeroCoordinate

DEFAULT_TOL = 1e-10
SEPARATION = 1e-6


@dataclass(frozen=True, eq=False)
class CoeffVector:
    """Coefficients of the s + r + 2 monomials of an element of L(Delta°)."""

    c_z: np.ndarray
    c_w: np.ndarray
    c_v0: complex
    c_e0: complex

    def __post_init__(self):
        object.__setattr__(self, "c_z", np.asarray(self.c_z, dtype=complex).reshape(-1))
        object.__setattr__(self, "c_w", np.asarray(self.c_w, dtype=complex).reshape(-1))
        object.__setattr__(self, "c_v0", complex(self.c_v0))
        object.__setattr__(self, "c_e0", complex(self.c_e0))
        if np.any(self.as_array() == 0):
            raise ValueError("all coefficients of an element of L(Delta°) must be nonzero")

    @classmethod
    def unit(cls, spec: BundleSpec, u: complex = 0.0) -> CoeffVector:
        """The one-parameter family f_u: coefficient e^u on W/Z, 1 elsewhere."""
        return cls(np.ones(spec.s), np.ones(spec.r), np.exp(u), 1.0)

    @classmethod
    def from_array(cls, spec: BundleSpec, arr) -> CoeffVector:
        arr = np.asarray(arr, dtype=complex)
        s, r = spec.s, spec.r
        if arr.shape != (s + r + 2,):
            raise ValueError(f"expected {s + r + 2} coefficients, got shape {arr.shape}")
        return cls(arr[:s], arr[s:s + r], arr[s + r], arr[s + r + 1])

    def as_array(self) -> np.ndarray:
        """Flat order: c_z..., c_w..., c_v0, c_e0."""
        return np.concatenate([self.c_z, self.c_w, [self.c_v0, self.c_e0]])

    def matches(self, spec: BundleSpec) -> bool:
        return self.c_z.shape == (spec.s,) and self.c_w.shape == (spec.r,)

    def allclose(self, other: CoeffVector, atol: float = 0.0, rtol: float = 1e-12) -> bool:
        return np.allclose(self.as_array(), other.as_array(), atol=atol, rtol=rtol)


@dataclass(frozen=True, eq=False)
class CritPoint:
    z: np.ndarray
    w: np.ndarray
    residual: float = float("nan")
    label: Optional[tuple[int, int]] = None

    @property
    def coords(self) -> np.ndarray:
        return np.concatenate([self.z, self.w])

    @classmethod
    def from_coords(cls, spec: BundleSpec, p, residual=float("nan"), label=None) -> CritPoint:
        p = np.asarray(p, dtype=complex)
        return cls(p[:spec.s].copy(), p[spec.s:].copy(), float(residual), label)


@dataclass(frozen=True, eq=False)
class CritSet:
    spec: BundleSpec
    coeffs: CoeffVector
    points: tuple[CritPoint, ...]
    tol: float = DEFAULT_TOL
    meta: dict = field(default_factory=dict)

    def __len__(self) -> int:
        return len(self.points)

    def array(self) -> np.ndarray:
        """All points stacked as an (N, s + r) complex array."""
        return np.array([p.coords for p in self.points]).reshape(len(self.points), self.spec.dim)

    @property
    def labels(self) -> list[Optional[tuple[int, int]]]:
        return [p.label for p in self.points]

    @property
    def is_labeled(self) -> bool:
        return all(p.label is not None for p in self.points)

    def with_labels(self, labels: Sequence[tuple[int, int]]) -> CritSet:
        pts = tuple(replace(p, label=tuple(lab)) for p, lab in zip(self.points, labels))
        return replace(self, points=pts, meta=dict(self.meta))

    def index_of(self, label: tuple[int, int]) -> int:
        return self.labels.index(tuple(label))

    @property
    def max_residual(self) -> float:
        return max(p.residual for p in self.points)


def _split(spec: BundleSpec, p: np.ndarray):
    p = np.asarray(p, dtype=complex)
    if p.shape[-1] != spec.dim:
        raise ValueError(f"points must have {spec.dim} coordinates, got {p.shape[-1]}")
    if np.any(p == 0):
        raise ZeroCoordinate("critical-point coordinates must be nonzero")
    return p[..., :spec.s], p[..., spec.s:]


def monomials(spec: BundleSpec, p) -> tuple[np.ndarray, np.ndarray]:
    """(W/Z, 1/prod w) at p; these are the two Theta monomials."""
    z, w = _split(spec, p)
    a = np.asarray(spec.a)
    WZ = np.prod(w ** a, axis=-1) / np.prod(z, axis=-1)
    invW = 1.0 / np.prod(w, axis=-1)
    return WZ, invW


def grad_system(spec: BundleSpec, c: CoeffVector, p) -> np.ndarray:
    """Residual vector (z_i df/dz_i, w_j df/dw_j) at p."""
    return grad_linear(spec, c.as_array(), p)


def grad_linear(spec: BundleSpec, coeffs: np.ndarray, p) -> np.ndarray:
    """grad_system for a raw flat coefficient array (zeros allowed).

    The system is linear in the coefficients, so passing dc/dtau gives the
    tau-derivative of the residual along a coefficient path.
    """
    s, r = spec.s, spec.r
    z, w = _split(spec, p)
    a = np.asarray(spec.a, dtype=float)
    WZ, invW = monomials(spec, p)
    R = (coeffs[s + r] * WZ)[..., None]
    Q = (coeffs[s + r + 1] * invW)[..., None]
    gz = coeffs[:s] * z - R
    gw = coeffs[s:s + r] * w + a * R - Q
    return np.concatenate([gz, gw], axis=-1)


def residual_scale(spec: BundleSpec, c: CoeffVector, p) -> np.ndarray:
    """Size of the largest term entering any component; 1-floored."""
    z, w = _split(spec, p)
    a = np.asarray(spec.a, dtype=float)
    WZ, invW = monomials(spec, p)
    R = np.abs(c.c_v0 * WZ)[..., None]
    Q = np.abs(c.c_e0 * invW)[..., None]
    terms = np.concatenate([np.abs(c.c_z * z) + R, np.abs(c.c_w * w) + a * R + Q], axis=-1)
    return np.maximum(1.0, terms.max(axis=-1))


def jacobian(spec: BundleSpec, c: CoeffVector, p) -> np.ndarray:
    """d(grad_system)/d(z, w), shape (..., s + r, s + r)."""
    s, r = spec.s, spec.r
    p = np.asarray(p, dtype=complex)
    z, w = _split(spec, p)
    a = np.asarray(spec.a, dtype=float)
    WZ, invW = monomials(spec, p)
    R = (c.c_v0 * WZ)[..., None]
    Q = (c.c_e0 * invW)[..., None]
    # dR/dz_k = -R/z_k, dR/dw_l = a_l R/w_l, dQ/dw_l = -Q/w_l
    dR = np.concatenate([-R / z, a * R / w], axis=-1)
    dQ = np.concatenate([np.zeros_like(z), -Q / w], axis=-1)
    J = np.zeros(p.shape[:-1] + (s + r, s + r), dtype=complex)
    J[..., :s, :] = -dR[..., None, :]
    J[..., s:, :] = a[:, None] * dR[..., None, :] - dQ[..., None, :]
    idx = np.arange(s + r)
    J[..., idx, idx] += np.concatenate([np.broadcast_to(c.c_z, z.shape),
                                        np.broadcast_to(c.c_w, w.shape)], axis=-1)
    return J


def log_jacobian(spec: BundleSpec, c: CoeffVector, p) -> np.ndarray:
    """Jacobian with respect to log-coordinates: J @ diag(p)."""
    return jacobian(spec, c, p) * np.asarray(p)[..., None, :]


def sup_residual(spec: BundleSpec, c: CoeffVector, p) -> np.ndarray:
    return np.abs(grad_system(spec, c, p)).max(axis=-1)


def is_converged(spec: BundleSpec, c: CoeffVector, p, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Residual test, relative to the term size once terms exceed 1."""
    return sup_residual(spec, c, p) <= tol * residual_scale(spec, c, p)


def newton(spec: BundleSpec, c: CoeffVector, p, tol: float = DEFAULT_TOL,
           max_iter: int = 20) -> tuple[np.ndarray, bool]:
    """Newton iteration in log-coordinates, batched over leading axes.

    Returns the refined points and a boolean (array) of convergence flags.
    """
    p = np.array(p, dtype=complex)
    batch = p.ndim > 1
    P = p.reshape(-1, spec.dim)
    done = np.zeros(len(P), dtype=bool)
    for _ in range(max_iter + 1):
        ok = is_converged(spec, c, P, tol)
        done |= ok
        active = ~ok
        if not active.any():
            break
        G = grad_system(spec, c, P[active])
        J = log_jacobian(spec, c, P[active])
        try:
            step = np.linalg.solve(J, -G[..., None])[..., 0]
        except np.linalg.LinAlgError:
            break
        step = np.clip(step.real, -1.0, 1.0) + 1j * np.clip(step.imag, -1.0, 1.0)
        P[active] = P[active] * np.exp(step)
    else:
        done = is_converged(spec, c, P, tol)
    # polish: one more step never hurts a converged point, and reaches the
    # rounding floor so that residuals are reproducible
    G = grad_system(spec, c, P)
    J = log_jacobian(spec, c, P)
    try:
        step = np.linalg.solve(J, -G[..., None])[..., 0]
        cand = P * np.exp(step)
        better = sup_residual(spec, c, cand) < sup_residual(spec, c, P)
        P[better] = cand[better]
    except np.linalg.LinAlgError:
        pass
    done = is_converged(spec, c, P, tol)
    P = P.reshape(p.shape)
    return P, (done if batch else bool(done[0]))


# -- reduced two-variable system ---------------------------------------------


def _bipoly_mul(A: np.ndarray, B: np.ndarray) -> np.ndarray:
    out = np.zeros((A.shape[0] + B.shape[0] - 1, A.shape[1] + B.shape[1] - 1), dtype=complex)
    for i in range(A.shape[0]):
        for j in range(A.shape[1]):
            if A[i, j] != 0:
                out[i:i + B.shape[0], j:j + B.shape[1]] += A[i, j] * B
    return out


def _bipoly_sub(A: np.ndarray, B: np.ndarray) -> np.ndarray:
    shape = (max(A.shape[0], B.shape[0]), max(A.shape[1], B.shape[1]))
    out = np.zeros(shape, dtype=complex)
    out[:A.shape[0], :A.shape[1]] += A
    out[:B.shape[0], :B.shape[1]] -= B
    return out


@dataclass(frozen=True, eq=False)
class BivariatePoly:
    """sum coef[i, j] C^i B^j."""

    coef: np.ndarray

    def __call__(self, C, B):
        C, B = np.broadcast_arrays(np.asarray(C, dtype=complex), np.asarray(B, dtype=complex))
        return npoly.polyval2d(C, B, self.coef)

    @property
    def total_degree(self) -> int:
        i, j = np.nonzero(np.abs(self.coef) > 0)
        return int((i + j).max()) if len(i) else 0

    def degree_in_B(self) -> int:
        _, j = np.nonzero(np.abs(self.coef) > 0)
        return int(j.max()) if len(j) else 0

    def in_B(self, C) -> np.ndarray:
        """Coefficients (ascending in B) after substituting a value of C."""
        powers = C ** np.arange(self.coef.shape[0])
        return powers @ self.coef

    def dC(self) -> BivariatePoly:
        return BivariatePoly(npoly.polyder(self.coef, axis=0) if self.coef.shape[0] > 1
                             else np.zeros((1, self.coef.shape[1]), dtype=complex))

    def dB(self) -> BivariatePoly:
        return BivariatePoly(npoly.polyder(self.coef, axis=1) if self.coef.shape[1] > 1
                             else np.zeros((self.coef.shape[0], 1), dtype=complex))


@dataclass(frozen=True, eq=False)
class ReducedSystem:
    """Two polynomials in C = c_v0 W/Z and B = c_e0/prod(w).

    At a critical point every c_z[i] z_i equals C and every c_w[j] w_j equals
    B - a_j C.  Substituting back gives

        P1 = C^{s+1} - k1 * prod_j (B - a_j C)^{a_j},   k1 = c_v0 prod(c_z) / prod(c_w^a)
        P2 = B * prod_j (B - a_j C) - k2,               k2 = c_e0 prod(c_w)

    whose roots with C != 0 and B != a_j C are in bijection with Crit.
    """

    spec: BundleSpec
    k1: complex
    k2: complex
    P1: BivariatePoly
    P2: BivariatePoly


def _reduced_polys(spec: BundleSpec, k1: complex, k2: complex, nu: complex = 1.0):
    """P1, P2 with (B - a_j nu C) factors; nu=1 gives the unscaled system."""
    s = spec.s
    prod_pow = np.ones((1, 1), dtype=complex)
    prod_lin = np.ones((1, 1), dtype=complex)
    for aj in spec.a:
        lin = np.zeros((2, 2), dtype=complex)
        lin[0, 1] = 1.0          # B
        lin[1, 0] = -aj * nu     # -a_j nu C
        prod_lin = _bipoly_mul(prod_lin, lin)
        for _ in range(aj):
            prod_pow = _bipoly_mul(prod_pow, lin)
    Cpow = np.zeros((s + 2, 1), dtype=complex)
    Cpow[s + 1, 0] = 1.0
    P1 = _bipoly_sub(Cpow, k1 * prod_pow)
    Bmono = np.zeros((1, 2), dtype=complex)
    Bmono[0, 1] = 1.0
    P2 = _bipoly_sub(_bipoly_mul(Bmono, prod_lin), np.full((1, 1), k2, dtype=complex))
    return BivariatePoly(P1), BivariatePoly(P2)


def reduction_constants(spec: BundleSpec, c: CoeffVector) -> tuple[complex, complex]:
    a = np.asarray(spec.a)
    k1 = c.c_v0 * np.prod(c.c_z) / np.prod(c.c_w ** a)
    k2 = c.c_e0 * np.prod(c.c_w)
    return complex(k1), complex(k2)


def reduced_system(spec: BundleSpec, c: CoeffVector) -> ReducedSystem:
    k1, k2 = reduction_constants(spec, c)
    P1, P2 = _reduced_polys(spec, k1, k2)
    return ReducedSystem(spec, k1, k2, P1, P2)


def reduce_point(spec: BundleSpec, c: CoeffVector, p) -> tuple[complex, complex]:
    """The (C, B) pair of a point of (C*)^{s+r}."""
    WZ, invW = monomials(spec, p)
    return complex(c.c_v0 * WZ), complex(c.c_e0 * invW)


def lift(spec: BundleSpec, c: CoeffVector, C: complex, B: complex) -> CritPoint:
    a = np.asarray(spec.a)
    if C == 0:
        raise DegenerateLift("C = 0 gives z = 0")
    wnum = B - a * C
    if np.any(wnum == 0):
        raise DegenerateLift("B = a_j C gives w_j = 0")
    z = C / c.c_z
    w = wnum / c.c_w
    p = np.concatenate([z, w])
    return CritPoint(z, w, float(sup_residual(spec, c, p)))
