"""Kleinschmidt bundles X_a = P(O + O(a_1) + ... + O(a_r)) over P^s.

Lattice data, toric divisors, Picard classes and the line-bundle
collection E_kl = k*pi^*H + l*xi.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import FanoViolation, NegativeTwist, SizeMismatch, Unsorted


@dataclass(frozen=True)
class BundleSpec:
    s: int
    a: tuple[int, ...]

    @property
    def r(self) -> int:
        return len(self.a)

    @property
    def N(self) -> int:
        return (self.s + 1) * (self.r + 1)

    @property
    def sum_a(self) -> int:
        return sum(self.a)

    @property
    def a_full(self) -> tuple[int, ...]:
        """Twists including the implicit a_0 = 0."""
        return (0,) + self.a

    @property
    def dim(self) -> int:
        return self.s + self.r

    def __str__(self) -> str:
        return f"X(s={self.s}, a={list(self.a)})"


def validate_spec(s: int, a: Sequence[int]) -> BundleSpec:
    a = tuple(int(x) for x in a)
    if int(s) != s or s < 1:
        raise ValueError(f"base dimension must be a positive integer, got {s!r}")
    if len(a) == 0:
        raise ValueError("need at least one twist (r >= 1)")
    if any(x < 0 for x in a):
        raise NegativeTwist(f"twists must be nonnegative, got {list(a)}")
    if list(a) != sorted(a):
        raise Unsorted(f"twists must be given in ascending order, got {list(a)}")
    if sum(a) > s:
        raise FanoViolation(f"sum(a) = {sum(a)} exceeds s = {s}; X is not Fano")
    return BundleSpec(int(s), a)


@dataclass(frozen=True)
class LatticeVector:
    name: str
    coords: tuple[int, ...]


@dataclass(frozen=True)
class PicClass:
    """h * pi^*H + x * xi."""

    h: int
    x: int

    def __add__(self, other: PicClass) -> PicClass:
        return PicClass(self.h + other.h, self.x + other.x)

    def __sub__(self, other: PicClass) -> PicClass:
        return PicClass(self.h - other.h, self.x - other.x)

    def __neg__(self) -> PicClass:
        return PicClass(-self.h, -self.x)


@dataclass(frozen=True)
class ToricDivisor:
    """sum n_i V(v_i) + sum m_j V(e_j), indices starting at 0."""

    n: tuple[int, ...]
    m: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "n", tuple(int(x) for x in self.n))
        object.__setattr__(self, "m", tuple(int(x) for x in self.m))

    @classmethod
    def zero(cls, spec: BundleSpec) -> ToricDivisor:
        return cls((0,) * (spec.s + 1), (0,) * (spec.r + 1))

    @classmethod
    def generator(cls, spec: BundleSpec, name: str) -> ToricDivisor:
        kind, idx = _split_generator(spec, name)
        n = [0] * (spec.s + 1)
        m = [0] * (spec.r + 1)
        (n if kind == "v" else m)[idx] = 1
        return cls(tuple(n), tuple(m))

    def __add__(self, other: ToricDivisor) -> ToricDivisor:
        if len(self.n) != len(other.n) or len(self.m) != len(other.m):
            raise SizeMismatch("divisors live on different bundles")
        return ToricDivisor(
            tuple(x + y for x, y in zip(self.n, other.n)),
            tuple(x + y for x, y in zip(self.m, other.m)),
        )

    def __mul__(self, k: int) -> ToricDivisor:
        return ToricDivisor(tuple(k * x for x in self.n), tuple(k * x for x in self.m))

    __rmul__ = __mul__

    @property
    def is_effective(self) -> bool:
        return all(x >= 0 for x in self.n) and all(x >= 0 for x in self.m)

    @property
    def is_zero(self) -> bool:
        return not any(self.n) and not any(self.m)

    def degree1(self, spec: BundleSpec) -> int:
        """|D|_1 = sum n_i - sum a_j m_j."""
        _check_size(spec, self)
        return sum(self.n) - sum(aj * mj for aj, mj in zip(spec.a_full, self.m))

    def degree2(self) -> int:
        """|D|_2 = sum m_j."""
        return sum(self.m)

    def tokens(self) -> list[str]:
        out = []
        for i, c in enumerate(self.n):
            out += [f"v{i}"] * c
        for j, c in enumerate(self.m):
            out += [f"e{j}"] * c
        return out

    def __str__(self) -> str:
        parts = []
        for i, c in enumerate(self.n):
            if c:
                parts.append(f"{c}*V(v{i})" if c != 1 else f"V(v{i})")
        for j, c in enumerate(self.m):
            if c:
                parts.append(f"{c}*V(e{j})" if c != 1 else f"V(e{j})")
        return " + ".join(parts) if parts else "0"


_GEN_RE = re.compile(r"^([ve])(\d+)$")


def _split_generator(spec: BundleSpec, name: str) -> tuple[str, int]:
    match = _GEN_RE.match(name.strip())
    if not match:
        raise ValueError(f"bad generator name {name!r}; expected v<i> or e<j>")
    kind, idx = match.group(1), int(match.group(2))
    bound = spec.s if kind == "v" else spec.r
    if idx > bound:
        raise ValueError(f"generator {name} out of range for {spec}")
    return kind, idx


def _check_size(spec: BundleSpec, D: ToricDivisor) -> None:
    if len(D.n) != spec.s + 1 or len(D.m) != spec.r + 1:
        raise SizeMismatch(
            f"divisor has {len(D.n)}+{len(D.m)} entries, "
            f"{spec} needs {spec.s + 1}+{spec.r + 1}"
        )


def generators(spec: BundleSpec) -> list[str]:
    """Generator names in canonical order v0..vs, e0..er."""
    return [f"v{i}" for i in range(spec.s + 1)] + [f"e{j}" for j in range(spec.r + 1)]


def parse_divisor(spec: BundleSpec, text: str) -> ToricDivisor:
    """Parse a multiset of generator tokens such as ``"v0,v0,e1"``.

    The empty string (or ``"0"``) is the zero divisor.
    """
    D = ToricDivisor.zero(spec)
    text = text.strip()
    if text in ("", "0"):
        return D
    for tok in text.split(","):
        if tok.strip():
            D = D + ToricDivisor.generator(spec, tok)
    return D


def divisor_from_tokens(spec: BundleSpec, tokens: Iterable[str]) -> ToricDivisor:
    return parse_divisor(spec, ",".join(tokens))


def polytope_vertices(spec: BundleSpec) -> list[LatticeVector]:
    """Vertices of the polar polytope in Z^{s+r}, ordered v_0..v_s, e_0..e_r."""
    s, r = spec.s, spec.r
    dim = s + r

    def unit(i):
        v = [0] * dim
        v[i] = 1
        return tuple(v)

    v0 = tuple([-1] * s + list(spec.a))
    e0 = tuple([0] * s + [-1] * r)
    out = [LatticeVector("v0", v0)]
    out += [LatticeVector(f"v{i + 1}", unit(i)) for i in range(s)]
    out.append(LatticeVector("e0", e0))
    out += [LatticeVector(f"e{j + 1}", unit(s + j)) for j in range(r)]
    return out


def divisor_class(spec: BundleSpec, D: ToricDivisor) -> PicClass:
    _check_size(spec, D)
    return PicClass(D.degree1(spec), D.degree2())


def exceptional_collection(spec: BundleSpec) -> list[PicClass]:
    """E_kl = (k, l) ordered lexicographically by (l, k)."""
    return [PicClass(k, l) for l in range(spec.r + 1) for k in range(spec.s + 1)]


def collection_labels(spec: BundleSpec) -> list[tuple[int, int]]:
    """The (k, l) grid in collection order."""
    return [(k, l) for l in range(spec.r + 1) for k in range(spec.s + 1)]
