"""Argument map Theta, the roots-of-unity limit grid and the (k, l) labels.

Theta(z, w) = Arg(W/Z, 1/prod(w)) in T^2 = (R/Z)^2, measured in turns.  As
u -> -infinity the critical points of f_u approach the grid

    theta_1 = l * sum(a) / ((s+1)(r+1)) + k / (s+1),   theta_2 = l / (r+1),

and the nearest grid point labels each point with (k, l), i.e. with the line
bundle E_kl = k pi^*H + l xi.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

import numpy as np

from .bundle import BundleSpec, collection_labels
from .errors import GridDegenerate, LabelAmbiguity
from .lg_system import CoeffVector, CritPoint, CritSet, monomials
from .report import Report
from .solver import solve_crit
from .tracker import SegmentPath, track_segment


@dataclass(frozen=True)
class TorusPoint:
    coords: tuple[float, ...]

    def __post_init__(self):
        object.__setattr__(self, "coords", tuple(float(x) % 1.0 for x in self.coords))

    def __getitem__(self, i):
        return self.coords[i]

    def distance(self, other: TorusPoint) -> float:
        return float(circular_distance(np.array(self.coords), np.array(other.coords)).max())


def circular_distance(x, y) -> np.ndarray:
    """Coordinate-wise distance on R/Z."""
    d = np.abs(np.asarray(x) - np.asarray(y)) % 1.0
    return np.minimum(d, 1.0 - d)


def theta_array(spec: BundleSpec, P) -> np.ndarray:
    """Theta of every row of P, shape (..., 2), in [0, 1)."""
    WZ, invW = monomials(spec, P)
    out = np.stack([np.angle(WZ), np.angle(invW)], axis=-1) / (2 * np.pi)
    return out % 1.0


def theta(spec: BundleSpec, p) -> TorusPoint:
    if isinstance(p, CritPoint):
        p = p.coords
    return TorusPoint(tuple(theta_array(spec, np.asarray(p, dtype=complex))))


def limit_grid_exact(spec: BundleSpec) -> list[tuple[tuple[Fraction, Fraction], tuple[int, int]]]:
    """Grid points as exact fractions mod 1, in collection order."""
    s, r = spec.s, spec.r
    out = []
    for k, l in collection_labels(spec):
        t1 = Fraction(l * spec.sum_a, (s + 1) * (r + 1)) + Fraction(k, s + 1)
        t2 = Fraction(l, r + 1)
        out.append(((t1 % 1, t2 % 1), (k, l)))
    if len({pt for pt, _ in out}) != len(out):
        raise GridDegenerate(f"limit grid of {spec} has coincident points")
    return out


def limit_grid(spec: BundleSpec) -> list[tuple[TorusPoint, tuple[int, int]]]:
    return [(TorusPoint((float(a), float(b))), lab) for (a, b), lab in limit_grid_exact(spec)]


def grid_spacing(spec: BundleSpec) -> float:
    """Minimal pairwise sup-distance between grid points."""
    pts = np.array([g.coords for g, _ in limit_grid(spec)])
    d = circular_distance(pts[:, None, :], pts[None, :, :]).max(axis=-1)
    d[np.diag_indices(len(pts))] = np.inf
    return float(d.min())


def grid_distances(spec: BundleSpec, cs: CritSet) -> np.ndarray:
    """(N points) x (N grid points) sup-distance matrix on T^2."""
    th = theta_array(spec, cs.array())
    grid = np.array([g.coords for g, _ in limit_grid(spec)])
    return circular_distance(th[:, None, :], grid[None, :, :]).max(axis=-1)


def assign_labels(spec: BundleSpec, cs: CritSet) -> CritSet:
    """Label each point by the (k, l) of its nearest grid point.

    Raises LabelAmbiguity when a point is farther than a quarter of the grid
    spacing from every grid point, or when two points pick the same label.
    """
    if len(cs) != spec.N:
        raise LabelAmbiguity(f"expected {spec.N} points, got {len(cs)}")
    grid_labels = [lab for _, lab in limit_grid(spec)]
    D = grid_distances(spec, cs)
    nearest = D.argmin(axis=1)
    dist = D[np.arange(len(cs)), nearest]
    limit = grid_spacing(spec) / 4
    if np.any(dist > limit):
        i = int(dist.argmax())
        raise LabelAmbiguity(
            f"point {i} is {dist[i]:.3g} from the grid (limit {limit:.3g}); "
            "increase T")
    if len(set(nearest.tolist())) != len(cs):
        raise LabelAmbiguity("two points share a grid cell; labeling is not bijective")
    out = cs.with_labels([grid_labels[j] for j in nearest])
    out.meta["grid_distance"] = float(dist.max())
    return out


def grid_deviation(spec: BundleSpec, cs: CritSet) -> float:
    """Max sup-distance from each labeled point's Theta to its own grid point."""
    grid = {lab: np.array(g.coords) for g, lab in limit_grid(spec)}
    th = theta_array(spec, cs.array())
    return float(max(circular_distance(t, grid[p.label]).max()
                     for t, p in zip(th, cs.points)))


def hyperplane_residual(spec: BundleSpec, cs: CritSet) -> float:
    """Distance of Arg(point) to the limiting hyperplanes in T^{s+r}.

    The hyperplanes are theta_i + sum(theta) - sum(a_j delta_j) = 0 for each i
    and delta_j + sum(delta) = 0 for each j, with theta = Arg z and
    delta = Arg w in turns.  Distance is |form mod 1| / |normal|.
    """
    s, r = spec.s, spec.r
    a = np.asarray(spec.a, dtype=float)
    ang = np.angle(cs.array()) / (2 * np.pi)
    th, de = ang[:, :s], ang[:, s:]
    forms, norms = [], []
    for i in range(s):
        forms.append(th[:, i] + th.sum(axis=1) - de @ a)
        coef = np.concatenate([np.ones(s), -a])
        coef[i] += 1
        norms.append(np.linalg.norm(coef))
    for j in range(r):
        forms.append(de[:, j] + de.sum(axis=1))
        coef = np.ones(r)
        coef[j] += 1
        norms.append(np.linalg.norm(coef))
    F = np.array(forms)
    dist = circular_distance(F, 0.0) / np.array(norms)[:, None]
    return float(dist.max())


hyperplane_check = hyperplane_residual


def labeled_set(spec: BundleSpec, T: float = 12.0) -> CritSet:
    """Critical set of f_{-T} with (k, l) labels."""
    return assign_labels(spec, solve_crit(spec, CoeffVector.unit(spec, -T)))


def theta_plus(spec: BundleSpec, T: float = 12.0, base: CritSet | None = None,
               **track_kw) -> list[tuple[tuple[int, int], TorusPoint]]:
    """Theta at u = +T of each labeled point, continued along real u.

    Labels are read at u = -T and carried along the segment through u = 0,
    which realizes I^+ composed with the inverse of the labeling.
    """
    if base is None:
        base = labeled_set(spec, T)
    end = track_segment(spec, SegmentPath(spec, -T, T), base, **track_kw)
    th = theta_array(spec, end.array())
    out = {p.label: TorusPoint(tuple(t)) for p, t in zip(end.points, th)}
    return [(lab, out[lab]) for lab in collection_labels(spec)]


def sample_curve(spec: BundleSpec, t_list: Iterable[float]) -> list[tuple]:
    """Rows (t, index, W/Z, 1/prod(w)) following each critical point along t.

    The first t is solved directly; every later t is reached by continuation
    from the previous one, so an index always names the same trajectory.
    """
    t_list = [float(t) for t in t_list]
    rows: list[tuple] = []
    cs = None
    for t in t_list:
        if cs is None:
            cs = solve_crit(spec, CoeffVector.unit(spec, t))
        else:
            u_prev = np.log(cs.coeffs.c_v0).real
            cs = track_segment(spec, SegmentPath(spec, u_prev, t), cs)
        WZ, invW = monomials(spec, cs.array())
        rows += [(t, i, complex(WZ[i]), complex(invW[i])) for i in range(len(cs))]
    return rows


def verify_grid_convergence(spec: BundleSpec, T_values=(2.0, 6.0, 12.0), tol: float = 1e-3,
                     **track_kw) -> Report:
    """Grid convergence of the labeled critical set as u = -T decreases.

    Labels are assigned once at the largest T and carried to the smaller ones
    by tracking along real u, so the same point is measured at every T even
    where direct labeling would be ambiguous.  Checks: bijective labeling,
    grid deviation and hyperplane residual below ``tol`` at the largest T,
    and both diagnostics non-increasing in T.
    """
    Ts = sorted({float(T) for T in T_values}, reverse=True)
    rep = Report(f"theorem-a {spec}")
    Tmax = Ts[0]
    try:
        cs = labeled_set(spec, Tmax)
    except LabelAmbiguity as exc:
        rep.pairs_checked = spec.N
        rep.mismatches.append({"kind": "labeling", "T": Tmax, "error": str(exc)})
        return rep
    rep.pairs_checked = spec.N
    dev, hyp = {}, {}
    current, u_prev = cs, -Tmax
    for T in Ts:
        if -T != u_prev:
            current = track_segment(spec, SegmentPath(spec, u_prev, -T), current, **track_kw)
            u_prev = -T
        dev[T] = grid_deviation(spec, current)
        hyp[T] = hyperplane_residual(spec, current)
    if dev[Tmax] >= tol:
        rep.mismatches.append({"kind": "grid_deviation", "T": Tmax, "value": dev[Tmax], "tol": tol})
    if hyp[Tmax] >= tol:
        rep.mismatches.append({"kind": "hyperplane", "T": Tmax, "value": hyp[Tmax], "tol": tol})
    asc = Ts[::-1]
    for name, series in (("grid_deviation", dev), ("hyperplane", hyp)):
        vals = [series[T] for T in asc]
        # exact-zero series (product case) count as monotone
        if any(b > a + 1e-14 for a, b in zip(vals, vals[1:])):
            rep.mismatches.append({"kind": f"{name}_monotone", "T": asc, "values": vals})
    rep.details = {
        "T": asc,
        "grid_deviation": [dev[T] for T in asc],
        "hyperplane_residual": [hyp[T] for T in asc],
        "labels": [list(p.label) for p in cs.points],
    }
    return rep


CURVE_COLUMNS = ("t", "index", "re_WZ", "im_WZ", "re_invW", "im_invW")


def curve_csv(rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CURVE_COLUMNS)
    for t, i, wz, iw in rows:
        writer.writerow([repr(t), i, repr(wz.real), repr(wz.imag), repr(iw.real), repr(iw.imag)])
    return buf.getvalue()
