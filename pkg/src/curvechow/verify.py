"""Re-derive every intersection identity for n = 2..n_max, symbolically."""

from __future__ import annotations

import itertools
from fractions import Fraction
from dataclasses import asdict, dataclass, field
from math import factorial

from . import chow
from .chow import configurations, integrate, multiply, power, pullback_insert_first, symmetric_classes
from .poly import RatPoly
from .stability import bogomolov_gap, gap_radicand, slope_quadratic
from .taut import (
    c1_taut_closed,
    ch2_closed,
    ch2_kernel_closed,
    ch_kernel,
    ch_taut,
    c1sq_closed,
    discriminant,
    discriminant_closed,
    integral_c1sq,
    integral_ch2,
)

G = RatPoly.symbol("g")


@dataclass
class Row:
    family: str
    n: int
    passed: bool
    computed: str
    expected: str


@dataclass
class Report:
    max_n: int
    rows: list[Row] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(row.passed for row in self.rows)

    def add(self, family: str, n: int, computed, expected) -> None:
        self.rows.append(Row(family, n, computed == expected, str(computed), str(expected)))

    def to_json(self) -> dict:
        return {"max_n": self.max_n, "passed": self.passed, "rows": [asdict(r) for r in self.rows]}

    def to_text(self) -> str:
        width = max(len(r.family) for r in self.rows)
        lines = []
        for r in self.rows:
            status = "PASS" if r.passed else "FAIL"
            line = f"{status}  n={r.n:<3} {r.family:<{width}}  {r.computed}"
            if not r.passed:
                line += f"   (expected {r.expected})"
            lines.append(line)
        lines.append(f"{sum(r.passed for r in self.rows)}/{len(self.rows)} identities hold")
        return "\n".join(lines)


def check_hk(n: int) -> tuple[str, str]:
    """H~^k = k! * sum_{|I|=k} eta_I for all k = 1..n."""
    H, _, _ = symmetric_classes(n)
    bad = []
    Hk = chow.fundamental(n)
    for k in range(1, n + 1):
        Hk = multiply(Hk, H)
        expected = chow.ChowClass.zero(n)
        for I in itertools.combinations(range(1, n + 1), k):
            expected = expected + chow.eta(I, n)
        if Hk != expected * factorial(k):
            bad.append(k)
    summary = f"holds for k=1..{n}" if not bad else f"fails for k={bad}"
    return summary, f"holds for k=1..{n}"


def check_projection(n: int) -> tuple[str, str]:
    """Both sides of the H~^(n-2) pushforward identity, checked on every
    codimension-2 configuration on C^(n-1)."""
    Hn, _, _ = symmetric_classes(n)
    Hm, _, _ = symmetric_classes(n - 1)
    lhs_power = power(Hn, n - 2)
    rhs_power = power(Hm, n - 3)
    mismatches = 0
    count = 0
    for c in configurations(n - 1, codim=2):
        alpha = chow.ChowClass(n - 1, {c: RatPoly.const(1)})
        lhs = integrate(multiply(lhs_power, pullback_insert_first(alpha)))
        rhs = integrate(multiply(rhs_power, alpha)) * (n - 2)
        count += 1
        mismatches += lhs != rhs
    return f"{count - mismatches}/{count} codim-2 configurations", f"{count}/{count} codim-2 configurations"


def check_gap(n: int, g_max: int = 10) -> tuple[str, str]:
    """Gap endpoints, emptiness, containment and the sign equivalence for g = 0..g_max."""
    failures = []
    for g in range(g_max + 1):
        gap = bogomolov_gap(n, g)
        q = gap_radicand(n, g)
        if (gap is None) != (q <= 0):
            failures.append(f"g={g} emptiness")
            continue
        if gap is None:
            continue
        if g == 0 and not gap.equals(-1, n - 1):
            failures.append("g=0 endpoints")
        if g >= 1 and not gap.inside(g - 1, n - g):
            failures.append(f"g={g} containment")
        for num in range(-4 * (n + 1), 4 * (n + 1) + 1):
            mu = Fraction(num, 4)
            if gap.contains(mu) != (slope_quadratic(n, g, mu) < 0):
                failures.append(f"g={g} mu={mu}")
                break
    return ("holds for g=0..%d" % g_max) if not failures else ", ".join(failures), "holds for g=0..%d" % g_max


def run_verification(n_max: int) -> Report:
    if n_max < 2:
        raise ValueError(f"n_max must be at least 2, got {n_max}")
    if n_max > chow.config.max_n:
        raise ValueError(f"n_max={n_max} exceeds the ambient cap {chow.config.max_n}")
    report = Report(n_max)
    for n in range(2, n_max + 1):
        H, delta, delta_prime = symmetric_classes(n)
        Hn2 = power(H, n - 2)
        f, f1 = factorial(n), factorial(n - 1)

        computed, expected = check_hk(n)
        report.add("H^k = k! sum eta_I", n, computed, expected)
        report.add("H^n", n, integrate(power(H, n)), RatPoly.const(f))
        report.add("delta H^(n-1)", n, integrate(multiply(delta, power(H, n - 1))), RatPoly.const(f * (n - 1)))
        report.add("delta^2 H^(n-2)", n,
                   integrate(multiply(multiply(delta, delta), Hn2)),
                   -f * (G - 1) + f * (n - 2) * n)
        report.add("P1 delta' H^(n-2)", n,
                   integrate(multiply(multiply(chow.point(1, n), delta_prime), Hn2)),
                   RatPoly.const(f1))
        report.add("delta'^2 H^(n-2)", n,
                   integrate(multiply(multiply(delta_prime, delta_prime), Hn2)),
                   -f1 * 2 * (G - 1) + f1 * (n - 2) * 3)
        if n >= 3:
            computed, expected = check_projection(n)
            report.add("projection formula", n, computed, expected)
        report.add("ch_2 of kernel H^(n-2)", n,
                   integrate(multiply(ch_kernel(n)[2], Hn2)), ch2_kernel_closed(n))
        c1 = ch_taut(n)[1]
        c1_closed = c1_taut_closed(n)
        report.add("c_1 = d H - r delta", n,
                   "recursion agrees" if c1 == c1_closed else str(c1),
                   "recursion agrees")
        report.add("c_1^2 H^(n-2)", n, integral_c1sq(n), c1sq_closed(n))
        report.add("ch_2 H^(n-2)", n, integral_ch2(n), ch2_closed(n))
        report.add("discriminant", n, discriminant(n, mode="engine"), discriminant_closed(n))
        computed, expected = check_gap(n)
        report.add("bogomolov gap", n, computed, expected)
    return report
