"""Cherries in graphs and the moments of the cherry count of a random labeled tree.

A cherry is a triple ``(u1, u2, v)`` of distinct vertices where ``u1`` and
``u2`` are leaves hanging off ``v`` and ``v`` has degree exactly 3. Triples
are reported with ``u1 < u2``.

Exact moments use :class:`fractions.Fraction`. For large ``n`` the same
quantities are evaluated in log space, with the variance ratios rewritten so
that no catastrophic cancellation occurs.
"""

from __future__ import annotations

import enum
import math
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from statistics import NormalDist
from typing import NamedTuple

from .graph import Graph
from .parallel import map_ranges
from .trees import sample_rng, sample_uniform_tree

__all__ = [
    "Cherry",
    "find_cherries",
    "count_cherries",
    "count_cherries_edges",
    "is_cherry",
    "OverlapCase",
    "overlap_case",
    "expectation_epsilon",
    "expectation_epsilon_pair",
    "MomentReport",
    "exact_moments",
    "asymptotic_moments",
    "variance_ratios",
    "wilson_interval",
    "TrialSummary",
    "monte_carlo_cherries",
    "MC_CSV_COLUMNS",
]


class Cherry(NamedTuple):
    u1: int
    u2: int
    v: int

    @property
    def vertices(self) -> frozenset[int]:
        return frozenset(self)


def is_cherry(g: Graph, u1: int, u2: int, v: int) -> bool:
    """Check the four defining conditions directly against ``g``."""
    if len({u1, u2, v}) != 3:
        return False
    if not (g.has_edge(u1, v) and g.has_edge(u2, v)):
        return False
    return g.degrees[u1] == 1 and g.degrees[u2] == 1 and g.degrees[v] == 3


def find_cherries(g: Graph) -> list[Cherry]:
    deg = g.degrees
    out = []
    for v in range(g.n):
        if deg[v] != 3:
            continue
        leaves = sorted(u for u in g.adj[v] if deg[u] == 1)
        for a in range(len(leaves)):
            for b in range(a + 1, len(leaves)):
                out.append(Cherry(leaves[a], leaves[b], v))
    out.sort()
    return out


def count_cherries(g: Graph) -> int:
    deg = g.degrees
    total = 0
    for v in range(g.n):
        if deg[v] == 3:
            k = sum(1 for u in g.adj[v] if deg[u] == 1)
            total += k * (k - 1) // 2
    return total


def count_cherries_edges(n: int, edges) -> int:
    """:func:`count_cherries` straight from an edge list (no Graph built)."""
    deg = [0] * n
    for u, v in edges:
        deg[u] += 1
        deg[v] += 1
    leaves_at = [0] * n
    for u, v in edges:
        if deg[u] == 1:
            leaves_at[v] += 1
        if deg[v] == 1:
            leaves_at[u] += 1
    return sum(k * (k - 1) // 2 for v, k in enumerate(leaves_at) if deg[v] == 3)


# -- exact moments ---------------------------------------------------------


class OverlapCase(enum.Enum):
    ALL_DISTINCT = "all-distinct"
    IDENTICAL = "identical-cherry"
    OTHER = "other"


def overlap_case(first: tuple[int, int, int], second: tuple[int, int, int]) -> OverlapCase:
    """Classify two index triples ``(i1, i2, j)`` for the joint indicator expectation."""
    i1, i2, j1 = first
    i3, i4, j2 = second
    if len({i1, i2, j1, i3, i4, j2}) == 6:
        return OverlapCase.ALL_DISTINCT
    if len({i1, i2, j1}) == 3 and j1 == j2 and {i1, i2} == {i3, i4}:
        return OverlapCase.IDENTICAL
    return OverlapCase.OTHER


def _check_n(n: int, least: int, what: str) -> None:
    if n < least:
        raise ValueError(f"{what} needs n >= {least}, got n={n}")


def expectation_epsilon(n: int) -> Fraction:
    """Probability that a fixed distinct triple is a cherry of a uniform tree."""
    _check_n(n, 4, "single-cherry indicator expectation")
    return Fraction((n - 3) ** (n - 4), n ** (n - 2))


def expectation_epsilon_pair(n: int, case: OverlapCase | str) -> Fraction:
    """Expectation of the product of two cherry indicators.

    ``OTHER`` covers every overlap pattern that is neither identical nor fully
    disjoint; it is zero for ``n >= 5``. At ``n = 4`` the star carries three
    cherries sharing one stem, so the zero value is false there and the call
    is refused.
    """
    case = OverlapCase(case)
    if case is OverlapCase.ALL_DISTINCT:
        _check_n(n, 7, "disjoint cherry pair expectation")
        return Fraction((n - 6) ** (n - 6), n ** (n - 2))
    if case is OverlapCase.IDENTICAL:
        return expectation_epsilon(n)
    if n == 4:
        raise ValueError("overlapping cherries sharing a stem occur at n=4 (the 3-leaf star)")
    return Fraction(0)


def _falling(n: int, k: int) -> int:
    out = 1
    for i in range(k):
        out *= n - i
    return out


def _ratio(num: Fraction | None, den: Fraction | None) -> Fraction | None:
    if num is None or den is None or den == 0:
        return None
    return num / den


@dataclass(frozen=True)
class MomentReport:
    """Exact moments of the cherry count ``C_n``.

    Second-moment fields are ``None`` below ``n = 7``.
    """

    n: int
    e_cn: Fraction
    e_cn_sq: Fraction | None = None
    var_cn: Fraction | None = None
    var_cn_minus_1: Fraction | None = None
    chebyshev_lower_bound_two_cherries: Fraction | None = None

    @property
    def variance_ratio(self) -> Fraction | None:
        return _ratio(self.var_cn, self.e_cn**2)

    @property
    def variance_ratio_minus_1(self) -> Fraction | None:
        return _ratio(self.var_cn_minus_1, (self.e_cn - 1) ** 2)

    def to_dict(self) -> dict:
        def s(x):
            return None if x is None else f"{x.numerator}/{x.denominator}"

        return {
            "n": self.n,
            "e_cn": s(self.e_cn),
            "e_cn_sq": s(self.e_cn_sq),
            "var_cn": s(self.var_cn),
            "var_cn_minus_1": s(self.var_cn_minus_1),
            "chebyshev_lower_bound_two_cherries": s(self.chebyshev_lower_bound_two_cherries),
        }


def exact_moments(n: int) -> MomentReport:
    """Exact ``E[C_n]``, ``E[C_n^2]``, variances and the two-cherry Chebyshev bound.

    ``n**(n-2) * E[C_n^2]`` counts ordered pairs of cherry positions over all
    trees: fully disjoint pairs contribute ``(n-6)**(n-6)`` trees each over
    ``n!/(4 (n-6)!)`` index choices, and a cherry paired with itself
    contributes ``n**(n-2) * E[C_n]`` once.
    """
    _check_n(n, 4, "E[C_n]")
    total = n ** (n - 2)
    single = n * (n - 1) * (n - 2) * (n - 3) ** (n - 4)
    e1 = Fraction(single, 2 * total)
    if n < 7:
        return MomentReport(n=n, e_cn=e1)
    pairs = Fraction(_falling(n, 6) * (n - 6) ** (n - 6), 4)
    e2 = (pairs + Fraction(single, 2)) / total
    var = e2 - e1**2
    bound = None
    if e1 != 1:
        bound = 1 - var / e1**2 - var / (e1 - 1) ** 2
    return MomentReport(
        n=n,
        e_cn=e1,
        e_cn_sq=e2,
        var_cn=var,
        var_cn_minus_1=var,
        chebyshev_lower_bound_two_cherries=bound,
    )


def _log_e1(n: int) -> float:
    return (
        math.log(0.5) + math.log(n) + math.log(n - 1) + math.log(n - 2)
        + (n - 4) * math.log(n - 3) - (n - 2) * math.log(n)
    )


def _log_pair_over_e1_sq(n: int) -> float:
    # log( E[C(C-1)] / E[C]^2 ), arranged so the O(n) terms cancel inside log1p
    lead = (
        math.log(n - 3) + math.log(n - 4) + math.log(n - 5)
        - math.log(n) - math.log(n - 1) - math.log(n - 2)
    )
    return lead + (n - 6) * math.log1p(-3 / (n - 3)) + (n - 2) * math.log1p(3 / (n - 3))


def asymptotic_moments(n: int) -> tuple[float, float]:
    """``(E[C_n], E[C_n^2])`` as floats, overflow-free for very large ``n``."""
    _check_n(n, 7, "asymptotic moments")
    e1 = math.exp(_log_e1(n))
    e2 = e1 * e1 * math.exp(_log_pair_over_e1_sq(n)) + e1
    return e1, e2


def variance_ratios(n: int) -> tuple[float, float]:
    """``Var[C_n]/E[C_n]^2`` and ``Var[C_n-1]/E[C_n-1]^2`` without cancellation."""
    _check_n(n, 7, "variance ratios")
    e1 = math.exp(_log_e1(n))
    r = math.expm1(_log_pair_over_e1_sq(n)) + 1.0 / e1
    return r, r * (e1 / (e1 - 1.0)) ** 2


# -- Monte Carlo -----------------------------------------------------------


def wilson_interval(successes: int, trials: int, confidence: float = 0.99) -> tuple[float, float]:
    if trials <= 0:
        raise ValueError("need at least one trial")
    z = NormalDist().inv_cdf(0.5 + confidence / 2)
    p = successes / trials
    denom = 1 + z * z / trials
    centre = (p + z * z / (2 * trials)) / denom
    half = z * math.sqrt(p * (1 - p) / trials + z * z / (4 * trials * trials)) / denom
    return max(0.0, centre - half), min(1.0, centre + half)


MC_CSV_COLUMNS = ("n", "trials", "seed", "mean", "p_geq_1", "p_geq_2", "cheb_bound")


@dataclass(frozen=True)
class TrialSummary:
    n: int
    trials: int
    master_seed: int
    counts_hist: dict[int, int] = field(default_factory=dict)
    confidence: float = 0.99

    def __post_init__(self) -> None:
        if sum(self.counts_hist.values()) != self.trials:
            raise ValueError("histogram does not sum to the number of trials")

    def _at_least(self, k: int) -> int:
        return sum(c for m, c in self.counts_hist.items() if m >= k)

    @property
    def mean(self) -> float:
        return sum(m * c for m, c in self.counts_hist.items()) / self.trials

    @property
    def std(self) -> float:
        mu = self.mean
        return math.sqrt(sum(c * (m - mu) ** 2 for m, c in self.counts_hist.items()) / self.trials)

    @property
    def p_geq_1(self) -> float:
        return self._at_least(1) / self.trials

    @property
    def p_geq_2(self) -> float:
        return self._at_least(2) / self.trials

    @property
    def p_eq_0(self) -> float:
        return self.counts_hist.get(0, 0) / self.trials

    def interval(self, k: int) -> tuple[float, float]:
        """Wilson interval for ``P[C_n >= k]``."""
        return wilson_interval(self._at_least(k), self.trials, self.confidence)

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "trials": self.trials,
            "master_seed": self.master_seed,
            "counts_hist": {str(k): v for k, v in sorted(self.counts_hist.items())},
            "mean": self.mean,
            "p_geq_1": self.p_geq_1,
            "p_geq_1_ci": list(self.interval(1)),
            "p_geq_2": self.p_geq_2,
            "p_geq_2_ci": list(self.interval(2)),
        }

    def csv_row(self, moments: MomentReport | None = None) -> list[str]:
        bound = None
        if moments is not None and moments.chebyshev_lower_bound_two_cherries is not None:
            bound = float(moments.chebyshev_lower_bound_two_cherries)
        return [
            str(self.n),
            str(self.trials),
            str(self.master_seed),
            repr(self.mean),
            repr(self.p_geq_1),
            repr(self.p_geq_2),
            "" if bound is None else repr(bound),
        ]


def _cherry_hist_chunk(n: int, master_seed: int, start: int, stop: int) -> Counter:
    hist: Counter = Counter()
    for i in range(start, stop):
        t = sample_uniform_tree(n, sample_rng(master_seed, n, i))
        hist[len(find_cherries(t))] += 1
    return hist


def monte_carlo_cherries(n: int, trials: int, master_seed: int, workers: int = 1) -> TrialSummary:
    if n < 2:
        raise ValueError(f"need n >= 2, got {n}")
    if trials < 1:
        raise ValueError("need at least one trial")
    hist: Counter = Counter()
    for part in map_ranges(_cherry_hist_chunk, trials, n, master_seed, workers=workers):
        hist.update(part)
    return TrialSummary(n=n, trials=trials, master_seed=master_seed, counts_hist=dict(sorted(hist.items())))
