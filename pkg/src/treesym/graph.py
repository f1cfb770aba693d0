"""Finite simple undirected graphs on vertices ``0..n-1`` and vertex permutations.

Permutations compose as ``(p * q)(i) == p(q(i))`` everywhere in the package.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

__all__ = [
    "Graph",
    "Permutation",
    "degree",
    "is_tree",
    "is_automorphism",
    "path_graph",
    "star_graph",
    "complete_graph",
    "empty_graph",
    "cycle_graph",
    "disjoint_union",
]


def _norm_edge(u: int, v: int) -> tuple[int, int]:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph with vertex set ``range(n)``.

    ``edges`` holds normalised pairs ``(i, j)`` with ``i < j``. Adjacency sets,
    degrees and the 0/1 matrix are derived lazily and cached.
    """

    n: int
    edges: frozenset[tuple[int, int]] = field(default_factory=frozenset)

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError(f"graph needs at least one vertex, got n={self.n}")
        normed = set()
        for u, v in self.edges:
            if u == v:
                raise ValueError(f"loop at vertex {u}")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={self.n}")
            normed.add(_norm_edge(int(u), int(v)))
        object.__setattr__(self, "edges", frozenset(normed))

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence[int]]) -> "Graph":
        return cls(n, frozenset((int(u), int(v)) for u, v in edges))

    @classmethod
    def from_adjacency_matrix(cls, a) -> "Graph":
        a = np.asarray(a)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise ValueError("adjacency matrix must be square")
        if not np.array_equal(a, a.T):
            raise ValueError("adjacency matrix must be symmetric")
        if np.any(np.diag(a)):
            raise ValueError("adjacency matrix must have zero diagonal")
        iu, ju = np.nonzero(np.triu(a, 1))
        return cls(a.shape[0], frozenset(zip(iu.tolist(), ju.tolist())))

    @cached_property
    def adj(self) -> tuple[frozenset[int], ...]:
        nbrs: list[set[int]] = [set() for _ in range(self.n)]
        for u, v in self.edges:
            nbrs[u].add(v)
            nbrs[v].add(u)
        return tuple(frozenset(s) for s in nbrs)

    @cached_property
    def degrees(self) -> tuple[int, ...]:
        return tuple(len(s) for s in self.adj)

    @cached_property
    def adjacency_matrix(self) -> np.ndarray:
        """Symmetric 0/1 ``int8`` matrix with zero diagonal (read-only)."""
        a = np.zeros((self.n, self.n), dtype=np.int8)
        if self.edges:
            e = np.array(sorted(self.edges))
            a[e[:, 0], e[:, 1]] = 1
            a[e[:, 1], e[:, 0]] = 1
        a.setflags(write=False)
        return a

    def has_edge(self, u: int, v: int) -> bool:
        return _norm_edge(u, v) in self.edges

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    def relabel(self, p: "Permutation") -> "Graph":
        """Image graph with edge ``{p(u), p(v)}`` for every edge ``{u, v}``."""
        if len(p) != self.n:
            raise ValueError("permutation length does not match graph order")
        img = p.image
        return Graph(self.n, frozenset(_norm_edge(img[u], img[v]) for u, v in self.edges))

    def to_edgelist_text(self) -> str:
        """Debug format: ``n`` on the first line, then one ``u v`` per edge."""
        lines = [str(self.n)] + [f"{u} {v}" for u, v in sorted(self.edges)]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_edgelist_text(cls, text: str) -> "Graph":
        rows = [ln.split() for ln in text.strip().splitlines() if ln.strip()]
        if not rows or len(rows[0]) != 1:
            raise ValueError("first line must hold the vertex count")
        n = int(rows[0][0])
        edges = []
        for k, r in enumerate(rows[1:], start=2):
            if len(r) != 2:
                raise ValueError(f"line {k}: expected 'u v', got {' '.join(r)!r}")
            edges.append((int(r[0]), int(r[1])))
        return cls.from_edges(n, edges)

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, edges={sorted(self.edges)})"


@dataclass(frozen=True)
class Permutation:
    """Bijection on ``range(n)``; ``image[i]`` is where vertex ``i`` goes."""

    image: tuple[int, ...]

    def __post_init__(self) -> None:
        img = tuple(int(x) for x in self.image)
        if sorted(img) != list(range(len(img))):
            raise ValueError(f"not a permutation of 0..{len(img) - 1}: {img}")
        object.__setattr__(self, "image", img)

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(tuple(range(n)))

    @classmethod
    def transposition(cls, n: int, a: int, b: int) -> "Permutation":
        img = list(range(n))
        img[a], img[b] = b, a
        return cls(tuple(img))

    def __len__(self) -> int:
        return len(self.image)

    def __call__(self, i: int) -> int:
        return self.image[i]

    def __mul__(self, other: "Permutation") -> "Permutation":
        if len(self) != len(other):
            raise ValueError("cannot compose permutations of different length")
        return Permutation(tuple(self.image[j] for j in other.image))

    def inverse(self) -> "Permutation":
        inv = [0] * len(self)
        for i, j in enumerate(self.image):
            inv[j] = i
        return Permutation(tuple(inv))

    @property
    def support(self) -> frozenset[int]:
        return frozenset(i for i, j in enumerate(self.image) if i != j)

    @property
    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.image))

    def matrix(self) -> np.ndarray:
        """Permutation matrix ``P`` with ``P[p(i), i] = 1``."""
        n = len(self)
        m = np.zeros((n, n), dtype=np.int8)
        m[list(self.image), list(range(n))] = 1
        return m


def degree(g: Graph, v: int) -> int:
    if not 0 <= v < g.n:
        raise ValueError(f"vertex {v} out of range for n={g.n}")
    return g.degrees[v]


def _is_connected(g: Graph) -> bool:
    seen = {0}
    queue = deque([0])
    while queue:
        u = queue.popleft()
        for w in g.adj[u]:
            if w not in seen:
                seen.add(w)
                queue.append(w)
    return len(seen) == g.n


def is_tree(g: Graph) -> bool:
    """True iff ``g`` is connected and acyclic.

    For a graph on ``n`` vertices, connected with exactly ``n - 1`` edges is
    equivalent: a connected graph has a spanning tree with ``n - 1`` edges, and
    any further edge closes a cycle.
    """
    return g.num_edges == g.n - 1 and _is_connected(g)


def is_automorphism(g: Graph, p: Permutation) -> bool:
    """True iff ``p`` maps edges to edges and non-edges to non-edges."""
    if len(p) != g.n:
        raise ValueError(f"permutation of length {len(p)} on a graph with n={g.n}")
    img = p.image
    # a bijection on pairs sending edges into edges also sends non-edges to non-edges
    return all(_norm_edge(img[u], img[v]) in g.edges for u, v in g.edges)


def path_graph(n: int) -> Graph:
    return Graph(n, frozenset((i, i + 1) for i in range(n - 1)))


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise ValueError("cycle needs n >= 3")
    return Graph(n, frozenset(_norm_edge(i, (i + 1) % n) for i in range(n)))


def star_graph(leaves: int) -> Graph:
    """Star with center 0 and leaves ``1..leaves``."""
    return Graph(leaves + 1, frozenset((0, i) for i in range(1, leaves + 1)))


def complete_graph(n: int) -> Graph:
    return Graph(n, frozenset((i, j) for i in range(n) for j in range(i + 1, n)))


def empty_graph(n: int) -> Graph:
    return Graph(n)


def disjoint_union(*graphs: Graph) -> Graph:
    edges = []
    offset = 0
    for g in graphs:
        edges.extend((u + offset, v + offset) for u, v in g.edges)
        offset += g.n
    return Graph(offset, frozenset(edges))
