"""Coherent configurations: 2-dimensional Weisfeiler-Leman closure and orbitals.

A configuration is an ``n x n`` array ``class_of`` partitioning ordered vertex
pairs; the characteristic matrices of the classes span a coherent algebra.
Class ids are renumbered by first occurrence in row-major pair order, so equal
partitions always serialize identically.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .graph import Graph
from .symmetry import DEFAULT_BRUTE_CAP, brute_force_automorphisms

__all__ = [
    "DEFAULT_WL_CAP",
    "CoherentConfiguration",
    "OrbitalConfiguration",
    "wl2_stabilize",
    "is_full",
    "orbital_configuration",
    "CoherenceCheck",
    "verify_coherence_axioms",
    "refines",
]

DEFAULT_WL_CAP = 256


def _canonical(labels: np.ndarray) -> tuple[np.ndarray, int]:
    """Relabel so class ids appear in increasing order of first row-major occurrence."""
    flat = labels.ravel()
    uniq, first, inv = np.unique(flat, return_index=True, return_inverse=True)
    rank = np.empty(len(uniq), dtype=np.int64)
    rank[np.argsort(first)] = np.arange(len(uniq))
    return rank[inv].reshape(labels.shape), len(uniq)


@dataclass(frozen=True, eq=False)
class CoherentConfiguration:
    n: int
    class_of: np.ndarray
    num_classes: int
    rounds: int = 0
    history: tuple[int, ...] = ()

    def class_matrix(self, k: int) -> np.ndarray:
        return (self.class_of == k).astype(np.int64)

    def class_sizes(self) -> np.ndarray:
        return np.bincount(self.class_of.ravel(), minlength=self.num_classes)

    def serialize(self) -> str:
        """``n``, ``num_classes``, then the row-major class array, space separated."""
        return " ".join(map(str, [self.n, self.num_classes, *self.class_of.ravel().tolist()]))

    @classmethod
    def deserialize(cls, text: str) -> "CoherentConfiguration":
        vals = [int(x) for x in text.split()]
        n, k = vals[0], vals[1]
        arr = np.array(vals[2:], dtype=np.int64)
        if arr.size != n * n:
            raise ValueError(f"expected {n * n} class ids, got {arr.size}")
        return cls(n=n, class_of=arr.reshape(n, n), num_classes=k)

    def __eq__(self, other) -> bool:
        if not isinstance(other, CoherentConfiguration):
            return NotImplemented
        return self.n == other.n and np.array_equal(self.class_of, other.class_of)


class OrbitalConfiguration(CoherentConfiguration):
    """Orbits of ``Aut(g)`` on ordered pairs."""


def _initial_colors(g: Graph) -> np.ndarray:
    a = g.adjacency_matrix.astype(np.int64)
    colors = a + 1
    np.fill_diagonal(colors, 0)
    return colors


def _pair_profiles(colors: np.ndarray, k: int) -> np.ndarray:
    """Row ``u*n + v`` is the sorted multiset of ``(c(u,w), c(w,v))`` codes over ``w``."""
    n = colors.shape[0]
    codes = colors[:, None, :] * k + colors.T[None, :, :]
    codes.sort(axis=2)
    return codes.reshape(n * n, n)


def wl2_stabilize(g: Graph, cap: int = DEFAULT_WL_CAP) -> CoherentConfiguration:
    """Coarsest coherent configuration containing the adjacency relation.

    Starts from (diagonal, edge, non-edge) and repeatedly recolors each pair
    by its old color plus the multiset of color pairs along all 2-walks,
    until the partition stops changing. New colors are exact row identities
    (``np.unique`` over the full profile), so no hash collisions can occur.
    """
    n = g.n
    if n > cap:
        raise ValueError(f"WL-2 refused: n={n} exceeds cap {cap}")
    colors, k = _canonical(_initial_colors(g))
    history = [k]
    rounds = 0
    while True:
        rounds += 1
        prof = _pair_profiles(colors, k)
        rows = np.concatenate([colors.reshape(-1, 1), prof], axis=1)
        _, inv = np.unique(rows, axis=0, return_inverse=True)
        new, k_new = _canonical(inv.reshape(n, n))
        if k_new == k and np.array_equal(new, colors):
            break
        if k_new < k:
            raise AssertionError("refinement lost classes")
        colors, k = new, k_new
        history.append(k)
    return CoherentConfiguration(n=n, class_of=colors, num_classes=k, rounds=rounds, history=tuple(history))


def is_full(c: CoherentConfiguration) -> bool:
    """True iff every ordered pair is its own class, i.e. the algebra is all matrices."""
    return c.num_classes == c.n * c.n


def orbital_configuration(g: Graph, cap: int = DEFAULT_BRUTE_CAP) -> OrbitalConfiguration:
    """Orbitals of the automorphism group, via union-find over generator images."""
    n = g.n
    report = brute_force_automorphisms(g, cap)
    parent = np.arange(n * n)

    def find(x: int) -> int:
        root = x
        while parent[root] != root:
            root = parent[root]
        while parent[x] != root:
            parent[x], x = root, parent[x]
        return root

    for p in report.generators:
        img = p.image
        for u in range(n):
            for v in range(n):
                a, b = find(u * n + v), find(img[u] * n + img[v])
                if a != b:
                    parent[max(a, b)] = min(a, b)
    roots = np.array([find(x) for x in range(n * n)]).reshape(n, n)
    labels, k = _canonical(roots)
    return OrbitalConfiguration(n=n, class_of=labels, num_classes=k)


@dataclass(frozen=True)
class CoherenceCheck:
    ok: bool
    axiom: str | None = None
    detail: str | None = None
    witness: tuple | None = None

    def __bool__(self) -> bool:
        return self.ok


def verify_coherence_axioms(c: CoherentConfiguration) -> CoherenceCheck:
    """Check the partition, unit, transpose and intersection-number axioms exhaustively."""
    n, k, cl = c.n, c.num_classes, np.asarray(c.class_of)
    if cl.shape != (n, n):
        return CoherenceCheck(False, "partition", f"class array has shape {cl.shape}")
    if cl.min() < 0 or cl.max() >= k or len(np.unique(cl)) != k:
        return CoherenceCheck(False, "partition", "class ids are not exactly 0..num_classes-1")

    diag = np.eye(n, dtype=bool)
    on_diag = np.zeros(k, dtype=bool)
    off_diag = np.zeros(k, dtype=bool)
    on_diag[cl[diag]] = True
    off_diag[cl[~diag]] = True
    mixed = np.flatnonzero(on_diag & off_diag)
    if mixed.size:
        a = int(mixed[0])
        return CoherenceCheck(False, "unital", f"class {a} mixes diagonal and off-diagonal pairs", (a,))

    # transpose of class a must be a single class of the same size
    flat, flat_t = cl.ravel(), cl.T.ravel()
    partner = np.full(k, -1)
    for a, b, idx in zip(flat, flat_t, range(n * n)):
        if partner[a] == -1:
            partner[a] = b
        elif partner[a] != b:
            u, v = divmod(idx, n)
            return CoherenceCheck(
                False, "transpose", f"transposes of class {a} fall in classes {partner[a]} and {b}", (int(a), u, v)
            )
    if sorted(partner.tolist()) != list(range(k)):
        return CoherenceCheck(False, "transpose", "transpose map is not a bijection on classes")

    # p^c_{ab}: for (u, v) in class c, #{w : (u,w) in a, (w,v) in b} must not depend on (u, v)
    prof = _pair_profiles(cl.astype(np.int64), k)
    rep = np.full(k, -1)
    for idx in range(n * n):
        cls = flat[idx]
        if rep[cls] == -1:
            rep[cls] = idx
            continue
        r = rep[cls]
        if not np.array_equal(prof[idx], prof[r]):
            u, v = divmod(idx, n)
            u0, v0 = divmod(int(r), n)
            a, b = _first_differing_pair(cl, u, v, u0, v0)
            return CoherenceCheck(
                False,
                "intersection",
                f"p^{cls}_({a},{b}) differs between pairs ({u0},{v0}) and ({u},{v})",
                (int(a), int(b), int(cls), (u0, v0), (u, v)),
            )
    return CoherenceCheck(True)


def _first_differing_pair(cl: np.ndarray, u: int, v: int, u0: int, v0: int) -> tuple[int, int]:
    from collections import Counter

    here = Counter(zip(cl[u, :].tolist(), cl[:, v].tolist()))
    there = Counter(zip(cl[u0, :].tolist(), cl[:, v0].tolist()))
    for key in sorted(set(here) | set(there)):
        if here[key] != there[key]:
            return key
    raise AssertionError("profiles differ but counts agree")


def refines(fine: CoherentConfiguration, coarse: CoherentConfiguration) -> bool:
    """True iff every class of ``fine`` lies inside a single class of ``coarse``."""
    f, c = fine.class_of.ravel(), coarse.class_of.ravel()
    image = np.full(fine.num_classes, -1)
    image[f] = c
    return bool(np.array_equal(image[f], c))
