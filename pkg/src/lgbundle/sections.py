"""Global sections of line bundles on X_a and the Hom table of E_kl.

H^0(X, h*pi^*H + x*xi) has a basis of effective toric divisors D with
|D|_2 = x and sum(n) = h + sum(a_j m_j).  The default count uses the
pushforward closed form: for each composition m of x, the n-part contributes
C(h + a.m + s, s) monomials.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import comb
from typing import Iterator

import numpy as np

from .bundle import (
    BundleSpec,
    PicClass,
    ToricDivisor,
    collection_labels,
    divisor_class,
)


def compositions(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    """Weak compositions of ``total`` into ``parts`` nonnegative integers."""
    if total < 0:
        return
    if parts == 1:
        yield (total,)
        return
    for first in range(total, -1, -1):
        for rest in compositions(total - first, parts - 1):
            yield (first,) + rest


def _n_total(spec: BundleSpec, L: PicClass, m: tuple[int, ...]) -> int:
    return L.h + sum(aj * mj for aj, mj in zip(spec.a_full, m))


def count_sections(spec: BundleSpec, L: PicClass, method: str = "binomial") -> int:
    """dim H^0(X, L).

    ``method="enumerate"`` lists every basis divisor instead of using the
    closed form; it is slow but independent of the binomial shortcut.
    """
    if method == "enumerate":
        return len(enumerate_section_divisors(spec, L))
    if method != "binomial":
        raise ValueError(f"unknown method {method!r}")
    return _count_binomial(spec, L.h, L.x)


@lru_cache(maxsize=None)
def _count_binomial(spec: BundleSpec, h: int, x: int) -> int:
    if x < 0:
        return 0
    total = 0
    L = PicClass(h, x)
    for m in compositions(x, spec.r + 1):
        t = _n_total(spec, L, m)
        if t >= 0:
            total += comb(t + spec.s, spec.s)
    return total


def enumerate_section_divisors(spec: BundleSpec, L: PicClass) -> list[ToricDivisor]:
    """Explicit monomial basis of H^0(X, L) as effective divisors."""
    out = []
    if L.x < 0:
        return out
    for m in compositions(L.x, spec.r + 1):
        t = _n_total(spec, L, m)
        for n in compositions(t, spec.s + 1):
            out.append(ToricDivisor(n, m))
    return out


@dataclass(frozen=True)
class HomTable:
    spec: BundleSpec
    dims: np.ndarray

    @property
    def labels(self) -> list[tuple[int, int]]:
        return collection_labels(self.spec)

    def __getitem__(self, pair):
        p, q = pair
        labels = self.labels
        return int(self.dims[labels.index(tuple(p)), labels.index(tuple(q))])

    def row(self, p) -> list[int]:
        return [int(x) for x in self.dims[self.labels.index(tuple(p))]]

    def backward_vanishes(self) -> bool:
        return bool(np.all(np.tril(self.dims, -1) == 0))

    def to_dict(self) -> dict:
        return {
            "s": self.spec.s,
            "a": list(self.spec.a),
            "order": [list(p) for p in self.labels],
            "dims": self.dims.tolist(),
        }


def hom_table(spec: BundleSpec) -> HomTable:
    labels = collection_labels(spec)
    dims = np.zeros((spec.N, spec.N), dtype=np.int64)
    for i, (k1, l1) in enumerate(labels):
        for j, (k2, l2) in enumerate(labels):
            dims[i, j] = count_sections(spec, PicClass(k2 - k1, l2 - l1))
    return HomTable(spec, dims)


def hom_witnesses(spec: BundleSpec, p, q) -> list[ToricDivisor]:
    """Basis divisors of Hom(E_p, E_q) = H^0(E_q - E_p)."""
    (k1, l1), (k2, l2) = p, q
    return enumerate_section_divisors(spec, PicClass(k2 - k1, l2 - l1))


def check_basis(spec: BundleSpec, L: PicClass) -> bool:
    """Every listed divisor is effective with class L, and none repeats."""
    basis = enumerate_section_divisors(spec, L)
    return (
        all(D.is_effective and divisor_class(spec, D) == L for D in basis)
        and len(set(basis)) == len(basis)
    )
