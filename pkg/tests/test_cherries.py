import itertools
import math
from collections import Counter
from fractions import Fraction

import pytest
from hypothesis import given
from statsmodels.stats.proportion import proportion_confint

from treesym.cherries import (
    Cherry,
    OverlapCase,
    TrialSummary,
    asymptotic_moments,
    count_cherries,
    count_cherries_edges,
    exact_moments,
    expectation_epsilon,
    expectation_epsilon_pair,
    find_cherries,
    is_cherry,
    monte_carlo_cherries,
    overlap_case,
    variance_ratios,
    wilson_interval,
)
from treesym.graph import Graph, path_graph, star_graph
from treesym.trees import enumerate_all_trees

from .strategies import graphs, trees

# Totals over all n**(n-2) labeled trees, from an independent heap-decoder enumeration.
SUM_C = {4: 12, 5: 60, 6: 540, 7: 6720, 8: 105000}
SUM_C_SQ = {4: 36, 5: 60, 6: 720, 7: 7980, 8: 125160}


def test_find_cherries_examples():
    assert find_cherries(path_graph(5)) == []
    assert find_cherries(star_graph(3)) == [(1, 2, 0), (1, 3, 0), (2, 3, 0)]
    # the center of a 4-leaf star has degree 4, so it is never a cherry stem
    assert find_cherries(star_graph(4)) == []


def test_cherry_on_non_tree():
    # triangle 0-1-2 with pendant 3 on 0: vertex 0 has degree 3 but only one leaf
    g = Graph.from_edges(6, [(0, 1), (1, 2), (0, 2), (0, 3), (4, 5)])
    assert find_cherries(g) == []
    g = Graph.from_edges(5, [(0, 1), (0, 2), (0, 3), (3, 4)])
    assert find_cherries(g) == [Cherry(1, 2, 0)]


@given(graphs(max_n=10))
def test_cherries_revalidate_on_graphs(g):
    cs = find_cherries(g)
    assert cs == sorted(cs)
    assert len(set(cs)) == len(cs)
    assert all(c.u1 < c.u2 and is_cherry(g, *c) for c in cs)
    assert count_cherries(g) == len(cs)
    # completeness: brute force over all ordered triples, halved
    brute = sum(1 for a, b, v in itertools.permutations(range(g.n), 3) if is_cherry(g, a, b, v))
    assert brute == 2 * len(cs)


@given(trees(max_n=80))
def test_edge_list_counter_agrees(t):
    assert count_cherries_edges(t.n, t.edges) == count_cherries(t)


@pytest.mark.parametrize("n", range(4, 8))
def test_totals_over_all_trees(n):
    c = [len(find_cherries(t)) for t in enumerate_all_trees(n)]
    assert sum(c) == SUM_C[n]
    assert sum(x * x for x in c) == SUM_C_SQ[n]


def test_exact_moments_examples():
    assert exact_moments(4).e_cn == Fraction(3, 4)
    assert exact_moments(5).e_cn == Fraction(12, 25)
    # second moment from enumerating all 16807 trees on 7 vertices
    assert exact_moments(7).e_cn_sq == Fraction(7980, 16807)
    assert exact_moments(8).e_cn_sq == Fraction(125160, 8**6)


@pytest.mark.parametrize("n", range(4, 9))
def test_exact_first_moment_matches_totals(n):
    assert exact_moments(n).e_cn * n ** (n - 2) == SUM_C[n]


def test_second_moment_absent_below_seven():
    for n in (4, 5, 6):
        rep = exact_moments(n)
        assert rep.e_cn_sq is None and rep.var_cn is None and rep.chebyshev_lower_bound_two_cherries is None
    with pytest.raises(ValueError):
        exact_moments(3)


@pytest.mark.parametrize("n", [7, 8, 12, 30, 64])
def test_moment_report_invariants(n):
    rep = exact_moments(n)
    assert rep.var_cn == rep.e_cn_sq - rep.e_cn**2
    assert rep.var_cn_minus_1 == rep.var_cn
    for x in (rep.e_cn, rep.e_cn_sq):
        assert (4 * n ** (n - 2)) % x.denominator == 0
    e = rep.e_cn
    assert rep.chebyshev_lower_bound_two_cherries == 1 - rep.var_cn / e**2 - rep.var_cn / (e - 1) ** 2


def test_epsilon_values():
    assert expectation_epsilon(4) == Fraction(1, 16)
    assert expectation_epsilon(5) == Fraction(2, 125)
    with pytest.raises(ValueError):
        expectation_epsilon(3)


@pytest.mark.parametrize("n, per_triple", [(4, 1), (5, 2), (6, 9)])
def test_epsilon_position_independent(n, per_triple):
    counts = Counter()
    for t in enumerate_all_trees(n):
        counts.update(find_cherries(t))
    for j in range(n):
        for i1, i2 in itertools.combinations([v for v in range(n) if v != j], 2):
            assert counts[(i1, i2, j)] == per_triple
    assert expectation_epsilon(n) * n ** (n - 2) == per_triple


def test_pair_values():
    assert expectation_epsilon_pair(7, OverlapCase.ALL_DISTINCT) == Fraction(1, 16807)
    assert expectation_epsilon_pair(7, "identical-cherry") == Fraction(64, 16807)
    for n in (5, 7, 20):
        assert expectation_epsilon_pair(n, OverlapCase.OTHER) == 0
    with pytest.raises(ValueError):
        expectation_epsilon_pair(6, OverlapCase.ALL_DISTINCT)
    with pytest.raises(ValueError):
        expectation_epsilon_pair(4, OverlapCase.OTHER)


def test_overlap_case():
    assert overlap_case((0, 1, 2), (3, 4, 5)) is OverlapCase.ALL_DISTINCT
    assert overlap_case((0, 1, 2), (1, 0, 2)) is OverlapCase.IDENTICAL
    assert overlap_case((0, 1, 2), (0, 3, 2)) is OverlapCase.OTHER
    assert overlap_case((0, 1, 2), (3, 4, 0)) is OverlapCase.OTHER


@pytest.mark.parametrize("n", [5, 6, 7])
def test_pair_expectation_exhaustive(n):
    # count trees carrying each ordered pair of cherry triples
    joint = Counter()
    for t in enumerate_all_trees(n):
        cs = find_cherries(t)
        joint.update(itertools.product(cs, cs))
    total = n ** (n - 2)
    triples = [(i1, i2, j) for j in range(n) for i1, i2 in itertools.combinations([v for v in range(n) if v != j], 2)]
    for a in triples:
        for b in triples:
            case = overlap_case(a, b)
            if case is OverlapCase.ALL_DISTINCT and n < 7:
                continue
            assert Fraction(joint[(a, b)], total) == expectation_epsilon_pair(n, case)


def test_asymptotic_matches_exact_up_to_64():
    for n in range(7, 65):
        rep = exact_moments(n)
        e1, e2 = asymptotic_moments(n)
        assert math.isclose(e1, float(rep.e_cn), rel_tol=1e-10)
        assert math.isclose(e2, float(rep.e_cn_sq), rel_tol=1e-10)
        r, r1 = variance_ratios(n)
        assert math.isclose(r, float(rep.variance_ratio), rel_tol=1e-10)
        assert math.isclose(r1, float(rep.variance_ratio_minus_1), rel_tol=1e-10)


def test_mean_grows_like_n_over_2e3():
    # (n-3)^(n-4) / n^(n-4) -> e^-3, so E[C_n] ~ n e^-3 / 2
    e1, _ = asymptotic_moments(10**6)
    assert 0.99 <= e1 / (10**6 * math.exp(-3) / 2) <= 1.01
    assert e1 / (10**6 / 2) < 0.06


def test_variance_ratio_small_at_a_million():
    r, r1 = variance_ratios(10**6)
    assert r < 1e-4 and r1 < 1e-4


def test_wilson_matches_statsmodels():
    for k, n in [(0, 10), (3, 10), (9990, 10000), (10000, 10000), (517, 1000)]:
        lo, hi = wilson_interval(k, n, 0.99)
        ref_lo, ref_hi = proportion_confint(k, n, alpha=0.01, method="wilson")
        assert math.isclose(lo, ref_lo, abs_tol=1e-12)
        assert math.isclose(hi, ref_hi, abs_tol=1e-12)


def test_trial_summary_invariants():
    s = TrialSummary(n=10, trials=10, master_seed=0, counts_hist={0: 3, 1: 4, 2: 2, 5: 1})
    assert s.p_geq_1 == 0.7 and s.p_geq_2 == 0.3 and s.p_eq_0 == 0.3
    assert s.mean == pytest.approx(1.3)  # (1*4 + 2*2 + 5*1) / 10
    with pytest.raises(ValueError):
        TrialSummary(n=10, trials=5, master_seed=0, counts_hist={0: 3})
    assert s.to_dict()["counts_hist"] == {"0": 3, "1": 4, "2": 2, "5": 1}


def test_monte_carlo_n4_mean():
    s = monte_carlo_cherries(4, 100_000, master_seed=404)
    # exact: 4 stars with 3 cherries among 16 trees, so Var = 36/16 - (3/4)^2
    sd = math.sqrt((Fraction(36, 16) - Fraction(9, 16)) / 100_000)
    assert abs(s.mean - 0.75) <= 5 * sd
    assert set(s.counts_hist) <= {0, 3}


def test_monte_carlo_n200_respects_chebyshev():
    s = monte_carlo_cherries(200, 10_000, master_seed=200)
    bound = float(exact_moments(200).chebyshev_lower_bound_two_cherries)
    lo, hi = s.interval(2)
    assert hi >= bound
    assert s.p_geq_2 <= s.p_geq_1 <= 1
    assert abs(s.mean - float(exact_moments(200).e_cn)) <= 5 * s.std / math.sqrt(s.trials)


@pytest.mark.parametrize("n", [20, 50, 100])
def test_no_cherry_probability_below_chebyshev(n):
    s = monte_carlo_cherries(n, 2000, master_seed=n)
    lo, _ = wilson_interval(s.counts_hist.get(0, 0), s.trials)
    assert lo <= float(exact_moments(n).variance_ratio)


def test_monte_carlo_independent_of_workers():
    a = monte_carlo_cherries(30, 3000, master_seed=9, workers=1)
    b = monte_carlo_cherries(30, 3000, master_seed=9, workers=3)
    assert a == b
