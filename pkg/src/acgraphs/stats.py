"""Exact combinatorial references and goodness-of-fit tests.

Reference distributions (cycle counts of uniform permutations, derived
from Stirling numbers of the first kind) are exact rationals; floating
point enters only in the chi-squared tail, whose critical values come
from a series/continued-fraction evaluation of the regularized lower
incomplete gamma function rather than a lookup table.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Mapping, Sequence

from .elements import Permutation
from .errors import PreconditionError

POOL_MIN_EXPECTED = 5.0


@lru_cache(maxsize=None)
def _stirling_row(n: int) -> tuple[int, ...]:
    # s(n, c) = s(n-1, c-1) + (n-1) * s(n-1, c)
    if n == 0:
        return (1,)
    prev = _stirling_row(n - 1)
    row = [0] * (n + 1)
    for c in range(1, n + 1):
        row[c] = prev[c - 1] + (n - 1) * (prev[c] if c < n else 0)
    return tuple(row)


def stirling_first(n: int, c: int) -> int:
    """Unsigned Stirling number of the first kind: permutations of n
    points with exactly c cycles.  Out-of-range c yields 0 by convention."""
    if n < 0:
        raise PreconditionError("n must be >= 0")
    if c < 0 or c > n:
        return 0
    return _stirling_row(n)[c]


@dataclass(frozen=True)
class CycleDistribution:
    """Exact distribution of cycle counts over Sym_n or Alt_n."""

    n: int
    parity: str  # "all" | "even"
    support: tuple[tuple[int, Fraction], ...]  # (cycle count, probability)

    def probabilities(self) -> dict[int, Fraction]:
        return dict(self.support)

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "parity": self.parity,
            "support": [
                {
                    "cycles": c,
                    "numerator": p.numerator,
                    "denominator": p.denominator,
                }
                for c, p in self.support
            ],
        }

    def to_csv_rows(self) -> list[tuple[int, int, int]]:
        return [(c, p.numerator, p.denominator) for c, p in self.support]


def cycle_distribution(n: int, parity: str = "all") -> CycleDistribution:
    """Cycle-count distribution of a uniform permutation of n points;
    parity "even" restricts to the even permutations (sign is determined
    by n minus the cycle count)."""
    if n < 1:
        raise PreconditionError("n must be >= 1")
    if parity not in ("all", "even"):
        raise PreconditionError(f"parity must be 'all' or 'even', got {parity!r}")
    counts = {
        c: stirling_first(n, c)
        for c in range(1, n + 1)
        if parity == "all" or (n - c) % 2 == 0
    }
    counts = {c: v for c, v in counts.items() if v}
    total = sum(counts.values())
    support = tuple((c, Fraction(v, total)) for c, v in sorted(counts.items()))
    return CycleDistribution(n, parity, support)


# -- regularized incomplete gamma (for the chi-squared tail) -------------------------


def _gamma_p_series(a: float, x: float) -> float:
    term = 1.0 / a
    total = term
    n = a
    for _ in range(500):
        n += 1.0
        term *= x / n
        total += term
        if abs(term) < abs(total) * 1e-15:
            break
    return total * math.exp(-x + a * math.log(x) - math.lgamma(a))


def _gamma_q_contfrac(a: float, x: float) -> float:
    # Lentz's algorithm for the continued fraction of Q(a, x)
    tiny = 1e-300
    b = x + 1.0 - a
    c = 1.0 / tiny
    d = 1.0 / b
    h = d
    for i in range(1, 500):
        an = -i * (i - a)
        b += 2.0
        d = an * d + b
        if abs(d) < tiny:
            d = tiny
        c = b + an / c
        if abs(c) < tiny:
            c = tiny
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < 1e-15:
            break
    return h * math.exp(-x + a * math.log(x) - math.lgamma(a))


def regularized_gamma_p(a: float, x: float) -> float:
    """P(a, x), the regularized lower incomplete gamma function."""
    if a <= 0:
        raise PreconditionError("shape parameter must be positive")
    if x < 0:
        raise PreconditionError("x must be >= 0")
    if x == 0:
        return 0.0
    if x < a + 1.0:
        return _gamma_p_series(a, x)
    return 1.0 - _gamma_q_contfrac(a, x)


def chi2_cdf(x: float, dof: int) -> float:
    return regularized_gamma_p(dof / 2.0, x / 2.0)


def chi2_critical(dof: int, alpha: float = 0.05) -> float:
    """Upper critical value: smallest x with CDF(x) >= 1 - alpha (bisection)."""
    if dof < 1:
        raise PreconditionError("dof must be >= 1")
    target = 1.0 - alpha
    lo, hi = 0.0, max(10.0, 4.0 * dof)
    while chi2_cdf(hi, dof) < target:
        hi *= 2.0
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if chi2_cdf(mid, dof) < target:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


@dataclass(frozen=True)
class Chi2Report:
    statistic: float
    dof: int
    critical: float
    alpha: float
    passed: bool
    pooled_bins: int

    def to_json(self) -> dict:
        return {
            "statistic": self.statistic,
            "dof": self.dof,
            "critical95": self.critical,
            "alpha": self.alpha,
            "pass": self.passed,
            "pooledBins": self.pooled_bins,
        }


def chi_squared_test(
    observed: Mapping,
    expected: Mapping | CycleDistribution,
    *,
    alpha: float = 0.05,
) -> Chi2Report:
    """Pearson chi-squared against exact expected probabilities.

    Bins whose expected count falls below 5 are pooled, smallest expected
    first, before computing the statistic; dof = bins - 1.
    """
    if isinstance(expected, CycleDistribution):
        expected = expected.probabilities()
    if not observed:
        raise PreconditionError("empty observed histogram")
    extra = set(observed) - set(expected)
    if extra:
        raise PreconditionError(f"observed values outside expected support: {extra}")
    total = sum(observed.values())
    if total <= 0:
        raise PreconditionError("observed histogram has no mass")
    bins = sorted(
        (float(Fraction(p) * total), float(observed.get(key, 0)))
        for key, p in expected.items()
    )
    while len(bins) > 1 and bins[0][0] < POOL_MIN_EXPECTED:
        (e0, o0), (e1, o1) = bins[0], bins[1]
        bins = sorted([(e0 + e1, o0 + o1)] + bins[2:])
    if len(bins) < 2:
        raise PreconditionError("fewer than two bins after pooling")
    stat = sum((o - e) ** 2 / e for e, o in bins)
    dof = len(bins) - 1
    crit = chi2_critical(dof, alpha)
    return Chi2Report(stat, dof, crit, alpha, stat < crit, len(bins))


def point_action_uniformity(
    samples: Sequence[Permutation], n: int, *, alpha: float = 0.05
) -> Chi2Report:
    """Chi-squared of the image of the first point under each sample
    against the uniform distribution on the n points."""
    if not samples:
        raise PreconditionError("no samples")
    hist: dict[int, int] = {}
    for s in samples:
        if not isinstance(s, Permutation) or s.degree != n:
            raise PreconditionError(f"expected degree-{n} permutations")
        img = s(0)
        hist[img] = hist.get(img, 0) + 1
    uniform = {point: Fraction(1, n) for point in range(n)}
    return chi_squared_test(hist, uniform, alpha=alpha)


def tv_distance(observed: Mapping, support_size: int) -> Fraction:
    """Total-variation distance between the histogram's empirical
    distribution and uniform over ``support_size`` outcomes (exact)."""
    if support_size < 1:
        raise PreconditionError("support size must be >= 1")
    if len(observed) > support_size:
        raise PreconditionError("histogram has more keys than the support")
    total = sum(observed.values())
    if total <= 0:
        raise PreconditionError("zero total count")
    u = Fraction(1, support_size)
    acc = sum(abs(Fraction(c, total) - u) for c in observed.values())
    acc += (support_size - len(observed)) * u
    return acc / 2
