import itertools
import math

import pytest
from hypothesis import given, settings

from treesym.cherries import Cherry, find_cherries
from treesym.graph import (
    Graph,
    Permutation,
    complete_graph,
    cycle_graph,
    disjoint_union,
    empty_graph,
    is_automorphism,
    path_graph,
    star_graph,
)
from treesym.graph6 import graph6_decode, graph6_encode
from treesym.symmetry import (
    ClassifyOptions,
    Status,
    brute_force_automorphisms,
    cherry_swap,
    classify,
    disjoint_cherry_pair,
    find_disjoint_automorphism_pair,
    iter_automorphisms,
    tree_automorphism_order,
    tree_center,
)
from treesym.trees import enumerate_all_trees, sample_gnp, sample_rng, sample_uniform_tree

from .strategies import graphs, trees

# two adjacent hubs 0 and 1, each carrying two leaves
DOUBLE_STAR = Graph.from_edges(6, [(0, 1), (0, 2), (0, 3), (1, 4), (1, 5)])
# smallest asymmetric tree: spine 0-1-2-3-4-5 with a pendant 6 on vertex 2
ASYM_TREE = Graph.from_edges(7, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (2, 6)])


def _naive_order(g: Graph) -> int:
    return sum(1 for p in itertools.permutations(range(g.n)) if is_automorphism(g, Permutation(p)))


@pytest.mark.parametrize(
    "g, order",
    [
        (path_graph(3), 2),
        (star_graph(3), 6),
        (ASYM_TREE, 1),
        (complete_graph(4), 24),
        (cycle_graph(5), 10),
        (empty_graph(4), 24),
        (DOUBLE_STAR, 8),
    ],
)
def test_brute_force_orders(g, order):
    rep = brute_force_automorphisms(g)
    assert rep.group_order == order
    assert all(is_automorphism(g, p) for p in rep.generators)
    assert rep.is_trivial == (order == 1)


@given(graphs(max_n=6))
@settings(max_examples=60)
def test_brute_force_matches_naive(g):
    assert brute_force_automorphisms(g).group_order == _naive_order(g)


def test_generators_generate_the_group():
    g = cycle_graph(6)
    rep = brute_force_automorphisms(g)
    group = {Permutation.identity(6)}
    frontier = list(group)
    while frontier:
        p = frontier.pop()
        for s in rep.generators:
            q = s * p
            if q not in group:
                group.add(q)
                frontier.append(q)
    assert len(group) == rep.group_order == 12
    assert set(iter_automorphisms(g)) == group


def test_brute_force_cap():
    with pytest.raises(ValueError, match="cap"):
        brute_force_automorphisms(path_graph(11))
    assert brute_force_automorphisms(path_graph(11), cap=11).group_order == 2


@pytest.mark.parametrize("n", range(2, 12))
def test_tree_order_path(n):
    assert tree_automorphism_order(path_graph(n)).group_order == 2


@pytest.mark.parametrize("k", range(1, 9))
def test_tree_order_star(k):
    assert tree_automorphism_order(star_graph(k)).group_order == (2 if k == 1 else math.factorial(k))


def test_tree_order_large_ahu_only():
    # caterpillar spine of 100 vertices, two leaves on each end: 2 * 2 * 2 (ends swap)
    edges = [(i, i + 1) for i in range(99)] + [(0, 100), (0, 101), (99, 102), (99, 103)]
    assert tree_automorphism_order(Graph.from_edges(104, edges)).group_order == 8


def test_tree_center():
    assert tree_center(path_graph(5)) == (2,)
    assert tree_center(path_graph(4)) == (1, 2)
    assert tree_center(star_graph(6)) == (0,)


def test_tree_order_rejects_non_tree():
    with pytest.raises(ValueError):
        tree_automorphism_order(cycle_graph(4))


@given(trees(max_n=9))
def test_tree_engine_agrees_with_brute_force(t):
    ahu = tree_automorphism_order(t)
    assert ahu.group_order == brute_force_automorphisms(t).group_order
    assert all(is_automorphism(t, p) for p in ahu.generators)


@pytest.mark.parametrize("n", range(2, 8))
def test_tree_engines_agree_exhaustive(n):
    for t in enumerate_all_trees(n):
        assert tree_automorphism_order(t).group_order == brute_force_automorphisms(t).group_order


@given(trees(max_n=60))
def test_order_is_relabel_invariant(t):
    rng = sample_rng(0, t.n, 1)
    p = Permutation(tuple(int(x) for x in rng.permutation(t.n)))
    assert tree_automorphism_order(t.relabel(p)).group_order == tree_automorphism_order(t).group_order


@given(graphs(max_n=9))
def test_cherry_swap_is_automorphism(g):
    for c in find_cherries(g):
        s = cherry_swap(c, g.n)
        assert is_automorphism(g, s)
        assert s.support == {c.u1, c.u2}


def test_double_star_pair():
    pair = disjoint_cherry_pair(DOUBLE_STAR)
    assert pair == (Cherry(2, 3, 0), Cherry(4, 5, 1))
    s, t = find_disjoint_automorphism_pair(DOUBLE_STAR)
    assert s == Permutation.transposition(6, 2, 3)
    assert t == Permutation.transposition(6, 4, 5)
    assert graph6_decode(graph6_encode(DOUBLE_STAR)) == DOUBLE_STAR


@pytest.mark.parametrize("g", [star_graph(3), path_graph(5), path_graph(2), complete_graph(3), ASYM_TREE])
def test_no_disjoint_pair(g):
    assert disjoint_cherry_pair(g) is None
    assert find_disjoint_automorphism_pair(g) is None


def test_disjoint_pair_without_cherries():
    # two disjoint triangles: rotations of each are disjointly supported
    g = disjoint_union(complete_graph(3), complete_graph(3))
    assert disjoint_cherry_pair(g) is None
    s, t = find_disjoint_automorphism_pair(g)
    assert s.support and t.support and s.support.isdisjoint(t.support)
    assert is_automorphism(g, s) and is_automorphism(g, t)
    # above the brute-force cap only cherries are tried
    assert find_disjoint_automorphism_pair(g, brute_cap=5) is None


def test_classify_examples():
    v = classify(DOUBLE_STAR)
    assert v.status is Status.QUANTUM_SYMMETRIC and v.verify(DOUBLE_STAR)
    assert v.classical == "symmetric"

    v = classify(complete_graph(3))
    assert v.status is Status.SYMMETRIC_UNDETERMINED_QUANTUM and v.group_order == 6

    v = classify(Graph(1))
    assert v.status is Status.QUANTUM_ASYMMETRIC and v.wl_classes == 1

    v = classify(ASYM_TREE)
    assert v.status in (Status.QUANTUM_ASYMMETRIC, Status.ASYMMETRIC_UNDETERMINED_QUANTUM)
    assert v.group_order == 1


def test_classify_random_graph_30_is_quantum_asymmetric():
    g = sample_gnp(30, 0.5, sample_rng(123, 30, 0))
    v = classify(g)
    assert v.status is Status.QUANTUM_ASYMMETRIC
    assert v.wl_classes == 900 and v.verify(g)


def test_classify_without_coherent_or_cap():
    g = sample_gnp(30, 0.5, sample_rng(123, 30, 0))
    assert classify(g, ClassifyOptions(use_coherent=False)).status is Status.UNDETERMINED
    assert classify(g, ClassifyOptions(wl_cap=20)).status is Status.UNDETERMINED


def test_verdict_to_dict():
    d = classify(DOUBLE_STAR).to_dict()
    assert d["status"] == "QUANTUM_SYMMETRIC"
    assert d["certificate"]["automorphisms"] == [[0, 1, 3, 2, 4, 5], [0, 1, 2, 3, 5, 4]]


@given(graphs(max_n=9))
def test_classify_invariants(g):
    v = classify(g)
    assert v.verify(g)
    order = brute_force_automorphisms(g).group_order
    if v.status is Status.QUANTUM_ASYMMETRIC:
        assert order == 1
    if v.status is Status.QUANTUM_SYMMETRIC or v.status is Status.SYMMETRIC_UNDETERMINED_QUANTUM:
        assert order > 1
    if v.group_order is not None:
        assert v.group_order == order
    # below the cap the classical status is always decided
    assert v.status is not Status.UNDETERMINED


@given(trees(min_n=4, max_n=200))
def test_cherry_implies_symmetry(t):
    if find_cherries(t):
        assert tree_automorphism_order(t).group_order >= 2
        assert classify(t).classical == "symmetric"


def test_disjoint_union_of_rigid_parts():
    # two non-isomorphic asymmetric trees side by side stay rigid
    other = Graph.from_edges(8, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (2, 7)])
    assert brute_force_automorphisms(other, cap=8).group_order == 1
    g = disjoint_union(ASYM_TREE, other)
    assert brute_force_automorphisms(g, cap=15).group_order == 1
    # two copies of the same rigid part swap with each other
    assert brute_force_automorphisms(disjoint_union(ASYM_TREE, ASYM_TREE), cap=14).group_order == 2


def test_large_random_tree_classification_is_certified():
    rng = sample_rng(8, 500, 0)
    t = sample_uniform_tree(500, rng)
    v = classify(t)
    assert v.status is Status.QUANTUM_SYMMETRIC and v.verify(t)
