"""Labeled trees via Prüfer sequences, plus G(n, p) random graphs.

Randomness is counter-based: sample ``index`` of a stream draws from a fresh
PCG64 generator seeded by ``SeedSequence(master_seed, spawn_key=(n, index))``.
Any partition of the index range over workers therefore reproduces the same
samples.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator, Sequence

import numpy as np

from .graph import Graph, is_tree

__all__ = [
    "DEFAULT_ENUM_CAP",
    "prufer_decode",
    "prufer_decode_edges",
    "prufer_encode",
    "sample_rng",
    "sample_uniform_tree",
    "enumerate_all_trees",
    "enumerate_prufer_edges",
    "sample_gnp",
    "SampleStream",
]

DEFAULT_ENUM_CAP = 9


def prufer_decode_edges(seq: Sequence[int], n: int) -> list[tuple[int, int]]:
    """Edge list of the tree coded by ``seq``; linear time, smallest leaf first."""
    if n < 2:
        raise ValueError(f"Prüfer sequences need n >= 2, got {n}")
    if len(seq) != n - 2:
        raise ValueError(f"sequence length {len(seq)} != n - 2 = {n - 2}")
    deg = [1] * n
    for x in seq:
        if not 0 <= x < n:
            raise ValueError(f"Prüfer entry {x} out of range 0..{n - 1}")
        deg[x] += 1
    ptr = 0
    while deg[ptr] != 1:
        ptr += 1
    leaf = ptr
    edges = []
    for x in seq:
        x = int(x)
        edges.append((leaf, x) if leaf < x else (x, leaf))
        deg[x] -= 1
        if deg[x] == 1 and x < ptr:
            leaf = x
        else:
            ptr += 1
            while deg[ptr] != 1:
                ptr += 1
            leaf = ptr
    edges.append((leaf, n - 1))
    return edges


def prufer_decode(seq: Sequence[int], n: int | None = None) -> Graph:
    if n is None:
        n = len(seq) + 2
    return Graph(n, frozenset(prufer_decode_edges(seq, n)))


def prufer_encode(t: Graph) -> tuple[int, ...]:
    n = t.n
    if n < 2 or not is_tree(t):
        raise ValueError("Prüfer encoding needs a tree on at least 2 vertices")
    # parents when rooted at n-1; that vertex is never removed
    parent = [-1] * n
    stack = [n - 1]
    seen = [False] * n
    seen[n - 1] = True
    while stack:
        u = stack.pop()
        for w in t.adj[u]:
            if not seen[w]:
                seen[w] = True
                parent[w] = u
                stack.append(w)
    deg = list(t.degrees)
    ptr = 0
    while deg[ptr] != 1:
        ptr += 1
    leaf = ptr
    code = []
    for _ in range(n - 2):
        nxt = parent[leaf]
        code.append(nxt)
        deg[nxt] -= 1
        if deg[nxt] == 1 and nxt < ptr:
            leaf = nxt
        else:
            ptr += 1
            while deg[ptr] != 1:
                ptr += 1
            leaf = ptr
    return tuple(code)


def sample_rng(master_seed: int, n: int, index: int) -> np.random.Generator:
    """Generator for sample ``index`` of the ``(master_seed, n)`` stream."""
    ss = np.random.SeedSequence(entropy=int(master_seed), spawn_key=(int(n), int(index)))
    return np.random.Generator(np.random.PCG64(ss))


def sample_uniform_tree(n: int, rng: np.random.Generator) -> Graph:
    """Uniform labeled tree: i.i.d. uniform Prüfer entries, then decode."""
    if n < 2:
        raise ValueError(f"need n >= 2, got {n}")
    seq = rng.integers(0, n, size=n - 2).tolist()
    return Graph(n, frozenset(prufer_decode_edges(seq, n)))


def _check_cap(n: int, cap: int) -> None:
    if n < 2:
        raise ValueError(f"need n >= 2, got {n}")
    if n > cap:
        raise ValueError(
            f"refusing to enumerate {n}^{n - 2} = {n ** (n - 2)} trees (n={n} exceeds cap {cap}); "
            "raise the enumeration cap explicitly if this is intended"
        )


def enumerate_prufer_edges(n: int, cap: int = DEFAULT_ENUM_CAP) -> Iterator[list[tuple[int, int]]]:
    """Edge lists of all ``n**(n-2)`` labeled trees, Prüfer-lexicographic order."""
    _check_cap(n, cap)
    for seq in itertools.product(range(n), repeat=n - 2):
        yield prufer_decode_edges(seq, n)


def enumerate_all_trees(n: int, cap: int = DEFAULT_ENUM_CAP) -> Iterator[Graph]:
    for edges in enumerate_prufer_edges(n, cap):
        yield Graph(n, frozenset(edges))


def sample_gnp(n: int, p: float, rng: np.random.Generator) -> Graph:
    """Each unordered pair is an edge iff one uniform draw falls below ``p``.

    Draws are consumed in graph6 pair order ``(0,1), (0,2), (1,2), ...``.
    """
    if n < 1:
        raise ValueError(f"need n >= 1, got {n}")
    p = float(p)
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"edge probability must lie in [0, 1], got {p}")
    if n == 1:
        return Graph(1)
    lo, hi = np.triu_indices(n, 1)
    order = np.lexsort((lo, hi))
    lo, hi = lo[order], hi[order]
    keep = rng.random(len(lo)) < p
    return Graph(n, frozenset(zip(lo[keep].tolist(), hi[keep].tolist())))


@dataclass(frozen=True)
class SampleStream:
    """Deterministic stream of ``count`` uniform trees on ``n`` vertices."""

    master_seed: int
    n: int
    count: int

    def tree(self, index: int) -> Graph:
        if not 0 <= index < self.count:
            raise IndexError(index)
        return sample_uniform_tree(self.n, sample_rng(self.master_seed, self.n, index))

    def __iter__(self) -> Iterator[Graph]:
        return (self.tree(i) for i in range(self.count))

    def __len__(self) -> int:
        return self.count
