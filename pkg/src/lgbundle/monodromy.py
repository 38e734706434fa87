"""Combinatorial monodromy on labels and the Hom_mon spaces.

A toric divisor D acts on labels by (k, l) -> (k + |D|_1, l + |D|_2) taken
mod (s+1, r+1).  Div^+(k, l) collects the effective D that keep (k, l)
inside the fundamental box; counting them by target label gives Hom_mon,
which is compared with the section counts of :mod:`lgbundle.sections`.
"""

from __future__ import annotations

import itertools
from typing import Iterable

import numpy as np

from .bundle import BundleSpec, ToricDivisor, collection_labels, generators
from .report import Report
from .sections import compositions, hom_table, hom_witnesses

LabelPoint = tuple[int, int]


def canonical(spec: BundleSpec, p) -> LabelPoint:
    k, l = p
    return (k % (spec.s + 1), l % (spec.r + 1))


def act(spec: BundleSpec, D: ToricDivisor, p) -> LabelPoint:
    k, l = p
    return canonical(spec, (k + D.degree1(spec), l + D.degree2()))


def act_unreduced(spec: BundleSpec, D: ToricDivisor, p) -> LabelPoint:
    k, l = p
    return (k + D.degree1(spec), l + D.degree2())


def act_grid(spec: BundleSpec, D: ToricDivisor, p) -> LabelPoint:
    """Translation by the degree pair, reduced the way the limit grid wraps.

    On the grid, (k, l + r + 1) and (k + sum(a), l) are the same point, so a
    carry out of l adds sum(a) to k.  This is what loop tracking measures;
    it agrees with ``act`` whenever no carry occurs, in particular on Div^+.
    """
    k, l = p
    q, l2 = divmod(l + D.degree2(), spec.r + 1)
    return ((k + D.degree1(spec) + q * spec.sum_a) % (spec.s + 1), l2)


def act_permutation(spec: BundleSpec, D: ToricDivisor, rule=act):
    from .tracker import Permutation

    return Permutation({p: rule(spec, D, p) for p in collection_labels(spec)})


def div_plus(spec: BundleSpec, p, strict: bool = False) -> list[ToricDivisor]:
    """Effective D with 0 <= k + |D|_1 <= s and 0 <= l + |D|_2 <= r.

    ``strict=True`` uses strict lower bounds (0 < k + |D|_1, 0 < l + |D|_2).
    With strict bounds Hom_mon((0, l), (0, l')) is empty although the
    corresponding Hom space is not, so the default is non-strict.
    """
    k, l = canonical(spec, p)
    s, r = spec.s, spec.r
    lo = 1 if strict else 0
    out = []
    for msum in range(max(0, lo - l), r - l + 1):
        for m in compositions(msum, r + 1):
            am = sum(aj * mj for aj, mj in zip(spec.a_full, m))
            for nsum in range(max(0, lo - k + am), s - k + am + 1):
                for n in compositions(nsum, s + 1):
                    out.append(ToricDivisor(n, m))
    return out


def hom_mon_witnesses(spec: BundleSpec, p1, p2, strict: bool = False) -> list[ToricDivisor]:
    p2 = canonical(spec, p2)
    return [D for D in div_plus(spec, p1, strict) if act(spec, D, p1) == p2]


def hom_mon_dimension(spec: BundleSpec, p1, p2, strict: bool = False) -> int:
    return len(hom_mon_witnesses(spec, p1, p2, strict))


def hom_mon_table(spec: BundleSpec, strict: bool = False) -> np.ndarray:
    labels = collection_labels(spec)
    index = {p: i for i, p in enumerate(labels)}
    T = np.zeros((spec.N, spec.N), dtype=np.int64)
    for i, p1 in enumerate(labels):
        for D in div_plus(spec, p1, strict):
            T[i, index[act(spec, D, p1)]] += 1
    return T


def verify_theorem_B(spec: BundleSpec, strict: bool = False) -> Report:
    """Hom_mon == Hom on every ordered pair, dimension and witness sets."""
    rep = Report(f"theorem-b {spec}")
    labels = collection_labels(spec)
    table = hom_table(spec)
    mon = hom_mon_table(spec, strict)
    for i, p1 in enumerate(labels):
        for j, p2 in enumerate(labels):
            rep.pairs_checked += 1
            hom = int(table.dims[i, j])
            hm = int(mon[i, j])
            if hom != hm:
                rep.mismatches.append({"src": list(p1), "dst": list(p2), "kind": "dimension",
                                       "hom": hom, "hom_mon": hm})
                continue
            W_mon = hom_mon_witnesses(spec, p1, p2, strict)
            W_sec = hom_witnesses(spec, p1, p2)
            if set(W_mon) != set(W_sec) or len(W_mon) != len(set(W_mon)):
                rep.mismatches.append({"src": list(p1), "dst": list(p2), "kind": "witnesses",
                                       "hom": hom, "hom_mon": hm})
    rep.details = {"strict": strict, "total_dimension": int(table.dims.sum())}
    if strict:
        rep.details["note"] = "strict lower bounds drop D with k + |D|_1 = 0 or l + |D|_2 = 0"
    return rep


def verify_composition(spec: BundleSpec, strict: bool = False) -> Report:
    """Witness addition W(p1,p2) x W(p2,p3) -> W(p1,p3) is well defined."""
    rep = Report(f"composition {spec}")
    labels = collection_labels(spec)
    W = {(p, q): hom_mon_witnesses(spec, p, q, strict) for p in labels for q in labels}
    nonempty = injective = surjective = 0
    for p1, p2, p3 in itertools.product(labels, repeat=3):
        A, B = W[p1, p2], W[p2, p3]
        if not A or not B:
            continue
        nonempty += 1
        rep.pairs_checked += 1
        target = set(W[p1, p3])
        sums = [D1 + D2 for D1 in A for D2 in B]
        bad = [D for D in sums if D not in target or act(spec, D, p1) != p3]
        if bad:
            rep.mismatches.append({"triple": [list(p1), list(p2), list(p3)],
                                   "bad": [str(D) for D in bad[:5]]})
        image = set(sums)
        injective += len(image) == len(sums)
        surjective += image == target
    rep.details = {"composable_triples": nonempty, "injective": injective,
                   "surjective": surjective}
    return rep


def verify_thm42_numeric(spec: BundleSpec, T: float = 12.0,
                         divisors: Iterable[ToricDivisor] = (), base=None, **track_kw) -> Report:
    """Numerical monodromy of each generator (plus extra divisors) vs ``act``."""
    from .labeling import labeled_set
    from .tracker import monodromy_permutation

    rep = Report(f"thm-4-2 {spec} T={T}")
    if base is None:
        base = labeled_set(spec, T)
    cases = [(g, ToricDivisor.generator(spec, g)) for g in generators(spec)]
    cases += [(str(D), D) for D in divisors]
    results, grid_results = {}, {}
    for name, D in cases:
        rep.pairs_checked += 1
        numeric = monodromy_permutation(spec, D, T, base=base, **track_kw)
        expected = act_permutation(spec, D)
        results[name] = numeric == expected
        grid_results[name] = numeric == act_permutation(spec, D, act_grid)
        if numeric != expected:
            rep.mismatches.append({
                "divisor": name,
                "numeric": {str(k): list(v) for k, v in numeric.mapping.items()},
                "expected": {str(k): list(v) for k, v in expected.mapping.items()},
            })
    rep.details = {"per_divisor": results, "matches_grid_carry": grid_results}
    return rep
