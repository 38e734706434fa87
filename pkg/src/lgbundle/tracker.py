"""Predictor-corrector continuation of critical sets in coefficient space.

All N points of a critical set are tracked together with a shared step so
that near-collisions can be detected at every step.  Tracking runs in
log-coordinates y = log(z, w): the scale of the points changes by many
orders of magnitude along the e^u segments, while relative accuracy is what
matters for the argument map.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Hashable, Mapping

import numpy as np

from .bundle import BundleSpec, ToricDivisor
from .errors import AmbiguousMatch, NewtonDivergence, PathCollision
from .lg_system import (
    DEFAULT_TOL,
    SEPARATION,
    CoeffVector,
    CritPoint,
    CritSet,
    grad_linear,
    log_jacobian,
    newton,
    sup_residual,
)
from .solver import relative_distance

CORRECTOR_TOL = 1e-12


# -- paths ------------------------------------------------------------------


class PathSpec:
    """A curve tau -> c(tau) in coefficient space, tau in [0, 1]."""

    spec: BundleSpec

    def coeffs(self, tau: float) -> CoeffVector:
        raise NotImplementedError

    def dcoeffs(self, tau: float) -> np.ndarray:
        """dc/dtau as a flat array (same order as CoeffVector.as_array)."""
        raise NotImplementedError

    def reversed(self) -> PathSpec:
        return ReversedPath(self)


@dataclass(frozen=True, eq=False)
class SegmentPath(PathSpec):
    """c_v0 = e^{u(tau)} with u linear from u0 to u1; other coefficients fixed."""

    spec: BundleSpec
    u0: complex
    u1: complex
    base: CoeffVector | None = None

    def _rest(self) -> np.ndarray:
        base = self.base if self.base is not None else CoeffVector.unit(self.spec)
        return base.as_array()

    def coeffs(self, tau):
        arr = self._rest()
        arr[-2] = np.exp(self.u0 + tau * (self.u1 - self.u0))
        return CoeffVector.from_array(self.spec, arr)

    def dcoeffs(self, tau):
        d = np.zeros(self.spec.s + self.spec.r + 2, dtype=complex)
        d[-2] = (self.u1 - self.u0) * np.exp(self.u0 + tau * (self.u1 - self.u0))
        return d


@dataclass(frozen=True, eq=False)
class LinearPath(PathSpec):
    """Straight segment (1 - tau) c0 + tau c1."""

    spec: BundleSpec
    c0: CoeffVector
    c1: CoeffVector

    def coeffs(self, tau):
        return CoeffVector.from_array(
            self.spec, (1 - tau) * self.c0.as_array() + tau * self.c1.as_array())

    def dcoeffs(self, tau):
        return self.c1.as_array() - self.c0.as_array()


def loop_exponents(spec: BundleSpec, D: ToricDivisor) -> np.ndarray:
    """Winding numbers of each coefficient along the loop of D (flat order)."""
    return np.array(list(D.n[1:]) + list(D.m[1:]) + [D.n[0], D.m[0]], dtype=float)


@dataclass(frozen=True, eq=False)
class LoopPath(PathSpec):
    """The loop of a toric divisor D based at f_t.

    Coefficient of z_i turns n_i times, of w_j m_j times, of W/Z n_0 times
    and of 1/prod(w) m_0 times as tau runs over [0, 1].
    """

    spec: BundleSpec
    D: ToricDivisor
    t: float

    def coeffs(self, tau):
        base = CoeffVector.unit(self.spec, self.t).as_array()
        return CoeffVector.from_array(
            self.spec, base * np.exp(2j * np.pi * loop_exponents(self.spec, self.D) * tau))

    def dcoeffs(self, tau):
        e = loop_exponents(self.spec, self.D)
        return 2j * np.pi * e * self.coeffs(tau).as_array()


@dataclass(frozen=True, eq=False)
class ReversedPath(PathSpec):
    path: PathSpec

    @property
    def spec(self):
        return self.path.spec

    def coeffs(self, tau):
        return self.path.coeffs(1.0 - tau)

    def dcoeffs(self, tau):
        return -self.path.dcoeffs(1.0 - tau)

    def reversed(self):
        return self.path


# -- permutations -----------------------------------------------------------


@dataclass(frozen=True)
class Permutation:
    """A bijection given as a mapping key -> image."""

    mapping: Mapping[Hashable, Hashable]

    def __post_init__(self):
        object.__setattr__(self, "mapping", dict(self.mapping))

    def __call__(self, key):
        return self.mapping[key]

    def __eq__(self, other):
        return isinstance(other, Permutation) and self.mapping == other.mapping

    def __hash__(self):
        return hash(frozenset(self.mapping.items()))

    @property
    def is_bijection(self) -> bool:
        return set(self.mapping) == set(self.mapping.values())

    @property
    def is_identity(self) -> bool:
        return all(k == v for k, v in self.mapping.items())

    def then(self, other: Permutation) -> Permutation:
        """Apply self first, then other."""
        return Permutation({k: other(v) for k, v in self.mapping.items()})

    def inverse(self) -> Permutation:
        return Permutation({v: k for k, v in self.mapping.items()})

    def relabel(self, labels) -> Permutation:
        """Index permutation -> permutation of labels[i]."""
        return Permutation({labels[k]: labels[v] for k, v in self.mapping.items()})

    @classmethod
    def identity(cls, keys) -> Permutation:
        return cls({k: k for k in keys})

    def __repr__(self):
        return f"Permutation({self.mapping})"


# -- tracking ---------------------------------------------------------------


@dataclass
class TrackStats:
    steps: int = 0
    rejected: int = 0
    min_step: float = float("inf")
    min_separation: float = float("inf")
    history: list = field(default_factory=list)


def _tangent(spec, path, tau, y):
    X = np.exp(y)
    c = path.coeffs(tau)
    rhs = grad_linear(spec, path.dcoeffs(tau), X)
    return -np.linalg.solve(log_jacobian(spec, c, X), rhs[..., None])[..., 0]


def _correct(spec, c, y, max_iter=8, first_max=0.1):
    """Newton on log-coordinates; returns (y, ok)."""
    prev = None
    for it in range(max_iter):
        X = np.exp(y)
        G = grad_linear(spec, c.as_array(), X)
        d = -np.linalg.solve(log_jacobian(spec, c, X), G[..., None])[..., 0]
        size = np.abs(d).max()
        if not np.isfinite(size):
            return y, False
        if it == 0 and size > first_max:
            return y, False
        if prev is not None and size > 0.5 * prev and size > 1e-13:
            return y, False
        y = y + d
        if size < CORRECTOR_TOL:
            return y, True
        prev = size
    return y, prev is not None and prev < 1e-10


def _min_pair_separation(P: np.ndarray):
    best, pair = np.inf, None
    for i in range(len(P)):
        d = relative_distance(P[i], P[:i]) if i else np.array([])
        if len(d):
            j = int(np.argmin(d))
            if d[j] < best:
                best, pair = float(d[j]), (j, i)
    return best, pair


def track_segment(spec: BundleSpec, path: PathSpec, start: CritSet, *,
                  h0: float = 1e-2, h_min: float = 1e-9, h_max: float = 0.05,
                  tol: float | None = None, stats: TrackStats | None = None) -> CritSet:
    """Continue every point of ``start`` from c(0) to c(1).

    Point i of the result is the continuation of point i of ``start`` and
    keeps its label.
    """
    tol = start.tol if tol is None else tol
    stats = stats if stats is not None else TrackStats()
    y = np.log(start.array())
    tau, h, streak = 0.0, h0, 0
    while tau < 1.0:
        h = min(h, 1.0 - tau)
        try:
            k1 = _tangent(spec, path, tau, y)
            k2 = _tangent(spec, path, tau + h / 2, y + h / 2 * k1)
            k3 = _tangent(spec, path, tau + h / 2, y + h / 2 * k2)
            k4 = _tangent(spec, path, tau + h, y + h * k3)
            y_pred = y + h / 6 * (k1 + 2 * k2 + 2 * k3 + k4)
            y_new, ok = _correct(spec, path.coeffs(tau + h), y_pred)
        except np.linalg.LinAlgError:
            ok = False
        if ok:
            sep, pair = _min_pair_separation(np.exp(y_new))
            if sep < SEPARATION:
                raise PathCollision(
                    f"points {pair} within {sep:.2e} at tau={tau + h:.6f}",
                    tau=tau + h, indices=pair)
            stats.min_separation = min(stats.min_separation, sep)
            y = y_new
            tau = tau + h if tau + h < 1.0 else 1.0
            stats.steps += 1
            stats.min_step = min(stats.min_step, h)
            streak += 1
            if streak >= 5:
                h, streak = min(1.5 * h, h_max), 0
        else:
            stats.rejected += 1
            h, streak = h / 2, 0
            if h < h_min:
                raise PathCollision(f"step size underflow at tau={tau:.6f}", tau=tau)
    c1 = path.coeffs(1.0)
    P, ok = newton(spec, c1, np.exp(y), tol=tol)
    if not np.all(ok):
        bad = int(np.flatnonzero(~ok)[0])
        raise NewtonDivergence(f"endpoint {bad} did not refine to tol", point=P[bad])
    res = sup_residual(spec, c1, P)
    pts = tuple(CritPoint.from_coords(spec, p, r, old.label)
                for p, r, old in zip(P, res, start.points))
    return CritSet(spec, c1, pts, tol, {"steps": stats.steps, "rejected": stats.rejected})


def match_points(end: np.ndarray, base: np.ndarray, ratio: float = 3.0) -> dict[int, int]:
    """Nearest-neighbour matching of endpoints to base points, with safeguard."""
    mapping = {}
    for i, p in enumerate(end):
        d = relative_distance(p, base)
        order = np.argsort(d)
        if len(d) > 1 and d[order[1]] < ratio * d[order[0]]:
            raise AmbiguousMatch(
                f"endpoint {i}: nearest {d[order[0]]:.2e}, second {d[order[1]]:.2e}")
        mapping[i] = int(order[0])
    if len(set(mapping.values())) != len(mapping):
        raise AmbiguousMatch("endpoint matching is not a bijection")
    return mapping


def track_loop(spec: BundleSpec, D: ToricDivisor, t: float, base: CritSet,
               **kw) -> Permutation:
    """Index permutation induced by the loop of D based at f_t."""
    path = LoopPath(spec, D, t)
    if not path.coeffs(0.0).allclose(base.coeffs, rtol=1e-12):
        raise ValueError("base critical set is not solved at the loop's base point")
    end = track_segment(spec, path, base, **kw)
    return Permutation(match_points(end.array(), base.array()))


def monodromy_permutation(spec: BundleSpec, D: ToricDivisor, T: float = 12.0,
                          base: CritSet | None = None, **kw) -> Permutation:
    """Monodromy of D read in (k, l) labels at u = -T."""
    from .labeling import assign_labels
    from .solver import solve_crit

    if T <= 0:
        raise ValueError("T must be positive")
    if base is None:
        base = assign_labels(spec, solve_crit(spec, CoeffVector.unit(spec, -T)))
    elif not base.is_labeled:
        base = assign_labels(spec, base)
    perm = track_loop(spec, D, -T, base, **kw)
    return perm.relabel(base.labels)


def track_loops(spec: BundleSpec, divisors, t: float, base: CritSet, **kw) -> Permutation:
    """Permutation of the concatenation: loop of divisors[0] first."""
    perm = Permutation.identity(range(len(base)))
    for D in divisors:
        perm = perm.then(track_loop(spec, D, t, base, **kw))
    return perm
