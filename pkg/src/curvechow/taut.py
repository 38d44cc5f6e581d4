"""Chern character of the pulled-back tautological bundle and its discriminant.

On C^n the pullback of E^[n] sits in an exact sequence

    0 -> pr_1^*E(-delta') -> pi^*E^[n] -> pr1bar^* pi^*E^[n-1] -> 0

so ch is computed recursively from ch(pr_1^*E) * exp(-delta') plus the
pullback of the level below. Everything here is symbolic in g, d, r unless
the bundle is given numeric rank/degree.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import factorial

from .chow import (
    ChowClass,
    fundamental,
    integrate,
    multiply,
    point,
    power,
    pullback_insert_first,
    symmetric_classes,
)
from .poly import RatPoly


@dataclass(frozen=True)
class BundleSpec:
    """Rank and degree of E on C; symbolic ``r`` and ``d`` by default."""

    rank: RatPoly = field(default_factory=lambda: RatPoly.symbol("r"))
    degree: RatPoly = field(default_factory=lambda: RatPoly.symbol("d"))

    def __post_init__(self):
        object.__setattr__(self, "rank", RatPoly.coerce(self.rank))
        object.__setattr__(self, "degree", RatPoly.coerce(self.degree))
        if self.rank.is_constant() and self.rank.constant_value() <= 0:
            raise ValueError(f"rank must be positive, got {self.rank}")

    @property
    def slope(self) -> Fraction:
        return self.degree.constant_value() / self.rank.constant_value()


SYMBOLIC = BundleSpec()


@dataclass
class GradedClass:
    """A mixed-codimension class truncated at codimension ``K = len(parts) - 1``."""

    n: int
    parts: list[ChowClass]

    def __post_init__(self):
        for k, part in enumerate(self.parts):
            if part.n != self.n:
                raise ValueError(f"part {k} lives on C^{part.n}, not C^{self.n}")
            if part.codims() - {k}:
                raise ValueError(f"part {k} has terms of codimension {sorted(part.codims())}")

    @classmethod
    def from_class(cls, a: ChowClass, K: int) -> "GradedClass":
        return cls(a.n, [a.homogeneous_part(k) for k in range(K + 1)])

    @property
    def order(self) -> int:
        return len(self.parts) - 1

    def __getitem__(self, k: int) -> ChowClass:
        if k < len(self.parts):
            return self.parts[k]
        return ChowClass.zero(self.n)

    def total(self) -> ChowClass:
        out = ChowClass.zero(self.n)
        for part in self.parts:
            out = out + part
        return out

    def __add__(self, other: "GradedClass") -> "GradedClass":
        K = min(self.order, other.order)
        return GradedClass(self.n, [self[k] + other[k] for k in range(K + 1)])

    def __mul__(self, other: "GradedClass") -> "GradedClass":
        K = min(self.order, other.order)
        parts = [ChowClass.zero(self.n) for _ in range(K + 1)]
        for i in range(K + 1):
            for j in range(K + 1 - i):
                parts[i + j] = parts[i + j] + multiply(self[i], other[j])
        return GradedClass(self.n, parts)

    def pullback(self) -> "GradedClass":
        return GradedClass(self.n + 1, [pullback_insert_first(p) for p in self.parts])


def ch_point_bundle(n: int, bundle: BundleSpec, K: int) -> GradedClass:
    """ch(pr_1^*E) = rank + degree * pr_1^*[x]."""
    return GradedClass.from_class(fundamental(n) * bundle.rank + point(1, n) * bundle.degree, K)


def exp_neg(divisor: ChowClass, K: int) -> GradedClass:
    parts = []
    term = fundamental(divisor.n)
    for k in range(K + 1):
        parts.append(term)
        term = multiply(term, -divisor) / (k + 1)
    return GradedClass(divisor.n, parts)


def ch_kernel(n: int, bundle: BundleSpec = SYMBOLIC, K: int = 2) -> GradedClass:
    """ch(pr_1^*E(-delta')), the sub-bundle of the exact sequence."""
    _, _, delta_prime = symmetric_classes(n)
    return ch_point_bundle(n, bundle, K) * exp_neg(delta_prime, K)


@lru_cache(maxsize=None)
def ch_taut(n: int, bundle: BundleSpec = SYMBOLIC, K: int = 2) -> GradedClass:
    """ch(pi^*E^[n]) on C^n up to codimension K."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if K < 0:
        raise ValueError(f"truncation order must be >= 0, got {K}")
    if n == 1:
        return ch_point_bundle(1, bundle, K)
    return ch_kernel(n, bundle, K) + ch_taut(n - 1, bundle, K).pullback()


def c1_taut_closed(n: int, bundle: BundleSpec = SYMBOLIC) -> ChowClass:
    """c_1(pi^*E^[n]) = d*H~ - r*delta."""
    H, delta, _ = symmetric_classes(n)
    return H * bundle.degree - delta * bundle.rank


def _require_surface_power(n: int) -> None:
    if n < 2:
        raise ValueError(f"n must be >= 2, got {n}")


def integral_c1sq(n: int, bundle: BundleSpec = SYMBOLIC) -> RatPoly:
    """c_1(E^[n])^2 H^(n-2) on C^(n), from the recursion."""
    _require_surface_power(n)
    H, _, _ = symmetric_classes(n)
    c1 = ch_taut(n, bundle, 2)[1]
    return integrate(multiply(power(c1, 2), power(H, n - 2))) / factorial(n)


def integral_ch2(n: int, bundle: BundleSpec = SYMBOLIC) -> RatPoly:
    """ch_2(E^[n]) H^(n-2) on C^(n), from the recursion."""
    _require_surface_power(n)
    H, _, _ = symmetric_classes(n)
    ch2 = ch_taut(n, bundle, 2)[2]
    return integrate(multiply(ch2, power(H, n - 2))) / factorial(n)


def c1sq_closed(n: int, bundle: BundleSpec = SYMBOLIC) -> RatPoly:
    g = RatPoly.symbol("g")
    d, r = bundle.degree, bundle.rank
    return d * d - 2 * (n - 1) * d * r - r * r * (g - 1) + n * (n - 2) * r * r


def ch2_closed(n: int, bundle: BundleSpec = SYMBOLIC) -> RatPoly:
    g = RatPoly.symbol("g")
    d, r = bundle.degree, bundle.rank
    return -(d + (g - 1) * r - (n - 2) * r) / 2


def ch2_kernel_closed(n: int, bundle: BundleSpec = SYMBOLIC) -> RatPoly:
    """ch_2(pr_1^*E(-delta')) H~^(n-2) on C^n, in closed form."""
    g = RatPoly.symbol("g")
    d, r = bundle.degree, bundle.rank
    f = factorial(n - 1)
    return -f * d - f * (g - 1) * r + Fraction(3, 2) * f * (n - 2) * r


def discriminant_closed(n: int, bundle: BundleSpec = SYMBOLIC) -> RatPoly:
    g = RatPoly.symbol("g")
    d, r = bundle.degree, bundle.rank
    return d * d - (n - 2) * d * r + (n - 1) * (g - 1) * r * r


def discriminant(n: int, bundle: BundleSpec = SYMBOLIC, mode: str = "engine") -> RatPoly:
    """Delta(E^[n]) H^(n-2) = -2 rank(E^[n]) ch_2 + c_1^2, paired with H^(n-2).

    ``mode="engine"`` runs the recursion through the Chow calculus;
    ``mode="closed"`` evaluates the closed-form quadratic in d and r.
    """
    _require_surface_power(n)
    if mode == "closed":
        return discriminant_closed(n, bundle)
    if mode != "engine":
        raise ValueError(f"unknown mode {mode!r}; expected 'engine' or 'closed'")
    return -2 * n * bundle.rank * integral_ch2(n, bundle) + integral_c1sq(n, bundle)
