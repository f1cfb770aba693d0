from __future__ import annotations

from hypothesis import strategies as st

from treesym.graph import Graph, Permutation
from treesym.trees import prufer_decode


@st.composite
def graphs(draw, min_n: int = 1, max_n: int = 12) -> Graph:
    n = draw(st.integers(min_n, max_n))
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    mask = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return Graph(n, frozenset(p for p, keep in zip(pairs, mask) if keep))


@st.composite
def trees(draw, min_n: int = 2, max_n: int = 60) -> Graph:
    n = draw(st.integers(min_n, max_n))
    seq = draw(st.lists(st.integers(0, n - 1), min_size=n - 2, max_size=n - 2))
    return prufer_decode(seq, n)


@st.composite
def permutations_of(draw, n: int):
    return Permutation(tuple(draw(st.permutations(list(range(n))))))
