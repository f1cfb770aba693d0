"""Classical automorphisms and the two sufficient criteria for quantum (a)symmetry.

Two independent automorphism engines live here:

* :func:`brute_force_automorphisms`: backtracking over vertex images with
  degree pruning, organised as a stabilizer chain so the group order is the
  product of basic orbit lengths. Exponential; capped at small ``n``.
* :func:`tree_automorphism_order`: AHU canonical forms for trees rooted at
  the center. Polynomial.

Quantum symmetry is certified by two non-trivial automorphisms with disjoint
supports; quantum asymmetry by a full coherent algebra (``n**2`` classes of
the 2-dimensional Weisfeiler-Leman partition). Anything else is reported as
undetermined.
"""

from __future__ import annotations

import enum
import math
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Iterator

from .cherries import Cherry, find_cherries
from .graph import Graph, Permutation, is_automorphism, is_tree

__all__ = [
    "DEFAULT_BRUTE_CAP",
    "AutomorphismReport",
    "brute_force_automorphisms",
    "iter_automorphisms",
    "tree_automorphism_order",
    "tree_center",
    "cherry_swap",
    "disjoint_cherry_pair",
    "find_disjoint_automorphism_pair",
    "Status",
    "ClassifyOptions",
    "QuantumSymmetryVerdict",
    "classify",
]

DEFAULT_BRUTE_CAP = 10


@dataclass(frozen=True)
class AutomorphismReport:
    group_order: int
    generators: tuple[Permutation, ...] = ()

    def __post_init__(self) -> None:
        if (self.group_order == 1) != (len(self.generators) == 0):
            raise ValueError("trivial group must have an empty generating set and vice versa")

    @property
    def is_trivial(self) -> bool:
        return self.group_order == 1


# -- brute force -----------------------------------------------------------


class _Search:
    """Backtracking for adjacency-preserving bijections with some images fixed in advance."""

    def __init__(self, g: Graph):
        n = g.n
        if 4 * g.num_edges > n * (n - 1):
            # same group as the complement, whose sparser adjacency prunes harder
            g = Graph(n, frozenset((u, v) for u in range(n) for v in range(u + 1, n) if not g.has_edge(u, v)))
        self.n = n
        self.deg = g.degrees
        self.adj = g.adj
        self.mask = [sum(1 << w for w in g.adj[v]) for v in range(g.n)]
        by_deg: dict[int, list[int]] = defaultdict(list)
        for v in range(g.n):
            by_deg[self.deg[v]].append(v)
        self.same_degree = [by_deg[self.deg[v]] for v in range(g.n)]
        self.order, self.anchor = self._vertex_order(g)

    @staticmethod
    def _vertex_order(g: Graph) -> tuple[list[int], list[int]]:
        # BFS from high-degree vertices; anchor[v] is v's BFS parent (-1 for component roots)
        seen = [False] * g.n
        anchor = [-1] * g.n
        order = []
        for s in sorted(range(g.n), key=lambda v: (-g.degrees[v], v)):
            if seen[s]:
                continue
            seen[s] = True
            queue = [s]
            for u in queue:
                order.append(u)
                for w in sorted(g.adj[u], key=lambda v: (-g.degrees[v], v)):
                    if not seen[w]:
                        seen[w] = True
                        anchor[w] = u
                        queue.append(w)
        return order, anchor

    def _consistent(self, v: int, w: int, img: list[int], assigned: list[int]) -> bool:
        if self.deg[v] != self.deg[w]:
            return False
        mv, mw = self.mask[v], self.mask[w]
        for u in assigned:
            if ((mv >> u) & 1) != ((mw >> img[u]) & 1):
                return False
        return True

    def extensions(self, fixed: dict[int, int]) -> Iterator[tuple[int, ...]]:
        """Every automorphism agreeing with the partial map ``fixed``."""
        img = [-1] * self.n
        used = [False] * self.n
        assigned: list[int] = []
        for v, w in fixed.items():
            if used[w] or not self._consistent(v, w, img, assigned):
                return
            img[v] = w
            used[w] = True
            assigned.append(v)
        free = [v for v in self.order if v not in fixed]
        yield from self._rec(free, 0, img, used, assigned)

    def _rec(self, free, k, img, used, assigned):
        if k == len(free):
            yield tuple(img)
            return
        v = free[k]
        a = self.anchor[v]
        # the anchor precedes v in search order, so it is already mapped
        cands = self.adj[img[a]] if a >= 0 else self.same_degree[v]
        for w in cands:
            if not used[w] and self._consistent(v, w, img, assigned):
                img[v] = w
                used[w] = True
                assigned.append(v)
                yield from self._rec(free, k + 1, img, used, assigned)
                assigned.pop()
                used[w] = False
                img[v] = -1

    def first_extension(self, fixed: dict[int, int]) -> tuple[int, ...] | None:
        return next(self.extensions(fixed), None)


def _check_cap(g: Graph, cap: int) -> None:
    if g.n > cap:
        raise ValueError(f"brute-force automorphism search refused: n={g.n} exceeds cap {cap}")


def brute_force_automorphisms(g: Graph, cap: int = DEFAULT_BRUTE_CAP) -> AutomorphismReport:
    """Exact ``Aut(g)`` by exhaustive search along a stabilizer chain.

    For base points ``b_0, b_1, ...`` (the search order), level ``i`` counts
    the images of ``b_i`` reachable while ``b_0..b_{i-1}`` stay fixed; each
    reachable image contributes one coset representative. The product of the
    level counts is ``|Aut(g)|`` and the representatives generate the group.
    """
    _check_cap(g, cap)
    s = _Search(g)
    order = 1
    gens: list[Permutation] = []
    fixed: dict[int, int] = {}
    for b in s.order:
        orbit = 1  # b -> b extends by the identity
        for w in s.same_degree[b]:
            if w == b or w in fixed.values():
                continue
            ext = s.first_extension({**fixed, b: w})
            if ext is not None:
                orbit += 1
                gens.append(Permutation(ext))
        order *= orbit
        fixed[b] = b
    return AutomorphismReport(group_order=order, generators=tuple(gens))


def iter_automorphisms(g: Graph, cap: int = DEFAULT_BRUTE_CAP) -> Iterator[Permutation]:
    """All automorphisms, one by one (identity included)."""
    _check_cap(g, cap)
    for img in _Search(g).extensions({}):
        yield Permutation(img)


# -- trees -------------------------------------------------------------------


def tree_center(t: Graph) -> tuple[int, ...]:
    """The one or two central vertices, found by peeling leaves layer by layer."""
    if t.n == 1:
        return (0,)
    deg = list(t.degrees)
    layer = [v for v in range(t.n) if deg[v] <= 1]
    remaining = t.n
    while remaining > 2:
        remaining -= len(layer)
        nxt = []
        for v in layer:
            for w in t.adj[v]:
                deg[w] -= 1
                if deg[w] == 1:
                    nxt.append(w)
        layer = nxt
    return tuple(sorted(layer))


class _RootedForm:
    """AHU interning: a rooted subtree's code is the id of its sorted child-code tuple."""

    def __init__(self, t: Graph):
        self.t = t
        self.ids: dict[tuple[int, ...], int] = {}
        self.code: dict[int, int] = {}
        self.aut: dict[int, int] = {}
        self.children: dict[int, list[int]] = {}

    def build(self, root: int, blocked: int | None = None) -> None:
        adj = self.t.adj
        parent = {root: blocked}
        post = []
        stack = [root]
        while stack:
            u = stack.pop()
            post.append(u)
            kids = [w for w in adj[u] if w != parent[u]]
            self.children[u] = kids
            for w in kids:
                parent[w] = u
                stack.append(w)
        for u in reversed(post):
            kids = self.children[u]
            key = tuple(sorted(self.code[w] for w in kids))
            self.code[u] = self.ids.setdefault(key, len(self.ids))
            aut = 1
            for w in kids:
                aut *= self.aut[w]
            counts: dict[int, int] = defaultdict(int)
            for c in key:
                counts[c] += 1
            for k in counts.values():
                aut *= math.factorial(k)
            self.aut[u] = aut

    def iso(self, a: int, b: int, img: list[int]) -> None:
        """Write an isomorphism of the subtree at ``a`` onto the (equal-code) subtree at ``b``."""
        stack = [(a, b)]
        while stack:
            x, y = stack.pop()
            img[x] = y
            xs = sorted(self.children[x], key=lambda w: self.code[w])
            ys = sorted(self.children[y], key=lambda w: self.code[w])
            stack.extend(zip(xs, ys))

    def swap(self, a: int, b: int) -> Permutation:
        img = list(range(self.t.n))
        self.iso(a, b, img)
        self.iso(b, a, img)
        return Permutation(tuple(img))

    def generators(self, roots) -> list[Permutation]:
        gens = []
        stack = list(roots)
        while stack:
            u = stack.pop()
            kids = self.children[u]
            stack.extend(kids)
            groups: dict[int, list[int]] = defaultdict(list)
            for w in sorted(kids):
                groups[self.code[w]].append(w)
            for members in groups.values():
                for x, y in zip(members, members[1:]):
                    gens.append(self.swap(x, y))
        return gens


def _tree_order(t: Graph) -> tuple[int, _RootedForm, tuple[int, ...], bool]:
    center = tree_center(t)
    form = _RootedForm(t)
    if len(center) == 1:
        (c,) = center
        form.build(c)
        return form.aut[c], form, center, False
    a, b = center
    form.build(a, blocked=b)
    form.build(b, blocked=a)
    equal = form.code[a] == form.code[b]
    return form.aut[a] * form.aut[b] * (2 if equal else 1), form, center, equal


def tree_automorphism_order(t: Graph) -> AutomorphismReport:
    """Exact ``|Aut(t)|`` of a tree from canonical forms rooted at its center.

    A bicentral tree is cut at the central edge; the two halves contribute
    their rooted orders, times 2 when their codes coincide. Generators swap
    neighbouring identical sibling subtrees (and the two halves when equal).
    """
    if not is_tree(t):
        raise ValueError("tree_automorphism_order needs a tree")
    order, form, center, halves_equal = _tree_order(t)
    gens: list[Permutation] = []
    if order > 1:
        gens = form.generators(center)
        if halves_equal:
            gens.append(form.swap(*center))
    return AutomorphismReport(group_order=order, generators=tuple(gens))


# -- disjoint supports -------------------------------------------------------


def cherry_swap(c: Cherry, n: int) -> Permutation:
    """The transposition of the two leaves of a cherry."""
    return Permutation.transposition(n, c.u1, c.u2)


def disjoint_cherry_pair(g: Graph) -> tuple[Cherry, Cherry] | None:
    """Lexicographically first pair of cherries on disjoint vertex triples."""
    cs = find_cherries(g)
    for i, a in enumerate(cs):
        for b in cs[i + 1 :]:
            if a.vertices.isdisjoint(b.vertices):
                return a, b
    return None


def _disjoint_pair_search(g: Graph, cap: int) -> tuple[Permutation, Permutation] | None:
    # tau has support disjoint from supp(sigma) iff tau fixes supp(sigma) pointwise
    s = _Search(g)
    tried: set[frozenset[int]] = set()
    for sigma in iter_automorphisms(g, cap):
        supp = sigma.support
        if not supp or supp in tried:
            continue
        tried.add(supp)
        for img in s.extensions({v: v for v in supp}):
            tau = Permutation(img)
            if not tau.is_identity:
                return sigma, tau
    return None


def find_disjoint_automorphism_pair(
    g: Graph, brute_cap: int = DEFAULT_BRUTE_CAP
) -> tuple[Permutation, Permutation] | None:
    """Two non-trivial automorphisms with disjoint supports, if one is found.

    Tries two vertex-disjoint cherries first. Otherwise, when ``g.n <=
    brute_cap``, searches the whole group. ``None`` for larger graphs proves
    nothing.
    """
    pair = disjoint_cherry_pair(g)
    if pair is not None:
        return cherry_swap(pair[0], g.n), cherry_swap(pair[1], g.n)
    if g.n <= brute_cap:
        return _disjoint_pair_search(g, brute_cap)
    return None


# -- classification ----------------------------------------------------------


class Status(str, enum.Enum):
    QUANTUM_SYMMETRIC = "QUANTUM_SYMMETRIC"
    QUANTUM_ASYMMETRIC = "QUANTUM_ASYMMETRIC"
    SYMMETRIC_UNDETERMINED_QUANTUM = "SYMMETRIC_UNDETERMINED_QUANTUM"
    ASYMMETRIC_UNDETERMINED_QUANTUM = "ASYMMETRIC_UNDETERMINED_QUANTUM"
    UNDETERMINED = "UNDETERMINED"


@dataclass(frozen=True)
class ClassifyOptions:
    brute_cap: int = DEFAULT_BRUTE_CAP
    wl_cap: int = 256
    use_coherent: bool = True


@dataclass(frozen=True)
class QuantumSymmetryVerdict:
    status: Status
    pair: tuple[Permutation, Permutation] | None = None
    wl_classes: int | None = None
    group_order: int | None = None
    n: int = 0

    @property
    def classical(self) -> str:
        if self.status in (Status.QUANTUM_SYMMETRIC, Status.SYMMETRIC_UNDETERMINED_QUANTUM):
            return "symmetric"
        if self.status in (Status.QUANTUM_ASYMMETRIC, Status.ASYMMETRIC_UNDETERMINED_QUANTUM):
            return "asymmetric"
        return "unknown"

    @property
    def certificate(self):
        if self.pair is not None:
            return self.pair
        return self.wl_classes

    def verify(self, g: Graph) -> bool:
        """Re-check the certificate against ``g`` from scratch."""
        if self.status is Status.QUANTUM_SYMMETRIC:
            if self.pair is None:
                return False
            s, t = self.pair
            return (
                is_automorphism(g, s)
                and is_automorphism(g, t)
                and bool(s.support)
                and bool(t.support)
                and s.support.isdisjoint(t.support)
            )
        if self.status is Status.QUANTUM_ASYMMETRIC:
            return self.wl_classes == g.n * g.n
        return True

    def to_dict(self) -> dict:
        d: dict = {"n": self.n, "status": self.status.value, "classical": self.classical}
        if self.group_order is not None:
            d["group_order"] = str(self.group_order)
        if self.pair is not None:
            d["certificate"] = {"automorphisms": [list(p.image) for p in self.pair]}
        elif self.wl_classes is not None:
            d["certificate"] = {"wl_classes": self.wl_classes}
        return d


def _classical_order(g: Graph, opts: ClassifyOptions) -> int | None:
    if is_tree(g):
        return _tree_order(g)[0]
    if g.n <= opts.brute_cap:
        return brute_force_automorphisms(g, opts.brute_cap).group_order
    return None


def classify(g: Graph, options: ClassifyOptions | None = None) -> QuantumSymmetryVerdict:
    """Decide quantum symmetry where one of the two sufficient criteria applies."""
    from .coherent import is_full, wl2_stabilize

    opts = options or ClassifyOptions()
    pair = find_disjoint_automorphism_pair(g, opts.brute_cap)
    if pair is not None:
        v = QuantumSymmetryVerdict(Status.QUANTUM_SYMMETRIC, pair=pair, n=g.n)
        if not v.verify(g):
            raise AssertionError("disjoint-support certificate failed re-verification")
        return v

    order = _classical_order(g, opts)
    # a full coherent algebra forces a trivial group, so WL is pointless when order > 1
    if opts.use_coherent and g.n <= opts.wl_cap and (order is None or order == 1):
        conf = wl2_stabilize(g, cap=opts.wl_cap)
        if is_full(conf):
            if order is not None and order != 1:
                raise AssertionError("full coherent algebra on a graph with symmetry")
            return QuantumSymmetryVerdict(
                Status.QUANTUM_ASYMMETRIC, wl_classes=conf.num_classes, group_order=1, n=g.n
            )

    if order is None:
        return QuantumSymmetryVerdict(Status.UNDETERMINED, n=g.n)
    status = Status.SYMMETRIC_UNDETERMINED_QUANTUM if order > 1 else Status.ASYMMETRIC_UNDETERMINED_QUANTUM
    return QuantumSymmetryVerdict(status, group_order=order, n=g.n)
