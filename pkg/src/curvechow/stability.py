"""Slope diagnostics for tautological bundles on C^(n).

The discriminant pairing d^2 - (n-2)dr + (n-1)(g-1)r^2 divided by r^2 is the
quadratic mu^2 - (n-2)mu + (n-1)(g-1) in the slope, so the Bogomolov
inequality forbids semistability exactly on the open interval between its
roots. Those roots are quadratic surds and all comparisons below are exact.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, isqrt
from typing import NamedTuple, Union

from .poly import RatPoly
from .taut import BundleSpec, discriminant_closed

Number = Union[int, Fraction]


def _is_square(q: int) -> bool:
    return q >= 0 and isqrt(q) ** 2 == q


@dataclass(frozen=True)
class RationalInterval:
    lo: Fraction
    hi: Fraction
    closed: bool = False

    def contains(self, mu: Number) -> bool:
        if self.closed:
            return self.lo <= mu <= self.hi
        return self.lo < mu < self.hi

    def __str__(self) -> str:
        left, right = ("[", "]") if self.closed else ("(", ")")
        return f"{left}{self.lo}, {self.hi}{right}"

    def to_json(self) -> dict:
        return {"lo": str(self.lo), "hi": str(self.hi), "closed": self.closed}


@dataclass(frozen=True)
class SurdInterval:
    """Open interval ((p - sqrt(q))/2, (p + sqrt(q))/2) with q > 0."""

    p: int
    q: int

    def __post_init__(self):
        if self.q <= 0:
            raise ValueError(f"radicand must be positive, got {self.q}")

    def contains(self, mu: Number) -> bool:
        t = 2 * Fraction(mu) - self.p
        return t * t < self.q

    def lower_at_least(self, a: Number) -> bool:
        """(p - sqrt q)/2 >= a."""
        t = self.p - 2 * Fraction(a)
        return t >= 0 and t * t >= self.q

    def upper_at_most(self, b: Number) -> bool:
        """(p + sqrt q)/2 <= b."""
        t = 2 * Fraction(b) - self.p
        return t >= 0 and self.q <= t * t

    def inside(self, a: Number, b: Number) -> bool:
        return self.lower_at_least(a) and self.upper_at_most(b)

    def equals(self, a: Number, b: Number) -> bool:
        if not _is_square(self.q):
            return False
        s = isqrt(self.q)
        return Fraction(self.p - s, 2) == a and Fraction(self.p + s, 2) == b

    def endpoints(self) -> tuple[str, str]:
        if _is_square(self.q):
            s = isqrt(self.q)
            return str(Fraction(self.p - s, 2)), str(Fraction(self.p + s, 2))
        return f"({self.p} - sqrt({self.q}))/2", f"({self.p} + sqrt({self.q}))/2"

    def approx(self) -> tuple[float, float]:
        s = self.q ** 0.5
        return (self.p - s) / 2, (self.p + s) / 2

    def __str__(self) -> str:
        lo, hi = self.endpoints()
        return f"({lo}, {hi})"

    def to_json(self) -> dict:
        lo, hi = self.endpoints()
        return {"p": self.p, "q": self.q, "lo": lo, "hi": hi, "closed": False}


def gap_radicand(n: int, g: int) -> int:
    return (n - 2) ** 2 - 4 * (n - 1) * (g - 1)


def bogomolov_gap(n: int, g: int) -> SurdInterval | None:
    """Open slope interval on which the discriminant pairing is negative,
    or None when the quadratic has no real roots (or a double root)."""
    if n < 2 or g < 0:
        raise ValueError(f"need n >= 2 and g >= 0, got n={n}, g={g}")
    q = gap_radicand(n, g)
    if q <= 0:
        return None
    return SurdInterval(n - 2, q)


def slope_quadratic(n: int, g: int, mu: Number) -> Fraction:
    mu = Fraction(mu)
    return mu * mu - (n - 2) * mu + (n - 1) * (g - 1)


class Verdict(enum.Enum):
    KNOWN_STABLE = "known-stable"
    SEMISTABLE_BOUNDARY = "known-semistable-boundary"
    SECTION_UNSTABLE = "section-unstable"
    BOGOMOLOV_UNSTABLE = "bogomolov-unstable"
    UNKNOWN = "unknown"


class Witness(NamedTuple):
    criterion: str
    interval: RationalInterval | SurdInterval

    def to_json(self) -> dict:
        return {"criterion": self.criterion, "interval": self.interval.to_json()}


@dataclass
class StabilityVerdict:
    verdict: Verdict
    witnesses: list[Witness] = field(default_factory=list)

    def __str__(self) -> str:
        if not self.witnesses:
            return self.verdict.value
        ws = "; ".join(f"{w.criterion} {w.interval}" for w in self.witnesses)
        return f"{self.verdict.value} ({ws})"

    def to_json(self) -> dict:
        return {"verdict": self.verdict.value, "witnesses": [w.to_json() for w in self.witnesses]}


def classify_slope(n: int, g: int, mu: Number) -> StabilityVerdict:
    """Classify what is known about stability of E^[n] for E semistable of slope mu.

    Criteria, in order: slope outside [-1, n-1] gives stability; the two
    endpoints give only semistability; a slope in (g-1, n-1) means E has a
    section and O is destabilising; finally the Bogomolov gap.
    """
    if n < 2 or g < 0:
        raise ValueError(f"need n >= 2 and g >= 0, got n={n}, g={g}")
    mu = Fraction(mu)
    stable_range = RationalInterval(Fraction(-1), Fraction(n - 1), closed=True)
    if not stable_range.contains(mu):
        return StabilityVerdict(Verdict.KNOWN_STABLE, [Witness("slope outside", stable_range)])
    if mu in (-1, n - 1):
        return StabilityVerdict(Verdict.SEMISTABLE_BOUNDARY, [Witness("slope endpoint of", stable_range)])

    gap = bogomolov_gap(n, g)
    in_gap = gap is not None and gap.contains(mu)
    section = RationalInterval(Fraction(g - 1), Fraction(n - 1))
    if section.contains(mu):
        witnesses = [Witness("structure sheaf destabilises on", section)]
        if in_gap:
            witnesses.append(Witness("bogomolov gap", gap))
        return StabilityVerdict(Verdict.SECTION_UNSTABLE, witnesses)
    if in_gap:
        return StabilityVerdict(Verdict.BOGOMOLOV_UNSTABLE, [Witness("bogomolov gap", gap)])
    return StabilityVerdict(Verdict.UNKNOWN)


def classify_bundle(n: int, g: int, degree: Number, rank: Number) -> StabilityVerdict:
    if rank <= 0:
        raise ValueError(f"rank must be positive, got {rank}")
    return classify_slope(n, g, Fraction(degree) / Fraction(rank))


class ModuliDimension(NamedTuple):
    dim: Fraction
    chi: Fraction


def chi_structure_sheaf_c2(g: int) -> Fraction:
    """chi(O) of the symmetric square of a genus g curve: 1 - g + C(g, 2)."""
    return Fraction(1 - g + comb(g, 2))


def moduli_expected_dim(g: int, r: int, d: int) -> ModuliDimension:
    """Expected dimension Delta - (rank^2 - 1) chi(O) of the moduli space of
    stable sheaves on C^(2) with the invariants of E^[2]."""
    if r < 1:
        raise ValueError(f"rank must be >= 1, got {r}")
    if g < 0:
        raise ValueError(f"genus must be >= 0, got {g}")
    chi = chi_structure_sheaf_c2(g)
    disc = discriminant_closed(2, BundleSpec(rank=RatPoly.const(r), degree=RatPoly.const(d)))
    delta = disc.evaluate({"g": g})
    rank = 2 * r
    return ModuliDimension(delta - (rank * rank - 1) * chi, chi)
