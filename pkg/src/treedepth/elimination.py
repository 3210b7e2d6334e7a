"""Elimination forests and constructive tree-depth upper bounds.

Heights count vertices: a single vertex has height 1 and the 15-vertex path
admits a forest of height 4.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from typing import Optional, Sequence

from .graph import Graph, GraphError, connected_components, find_cycle_vertex

__all__ = [
    "EliminationForest",
    "ComponentBound",
    "closure",
    "height",
    "is_elimination_forest",
    "build_tree_centroid",
    "build_unicyclic",
    "build_general_upper",
    "general_upper_bound",
    "greedy_heuristic",
    "elimination_order_forest",
    "dfs_forest",
    "format_forest",
    "parse_forest",
]


class EliminationForest:
    """Rooted forest given by a parent array (``None`` marks a root)."""

    __slots__ = ("parent", "_depth")

    def __init__(self, parent: Sequence[Optional[int]]):
        n = len(parent)
        par = tuple(None if p is None or p < 0 else int(p) for p in parent)
        for v, p in enumerate(par):
            if p is not None and not 0 <= p < n:
                raise ValueError(f"parent of {v} out of range: {p}")
            if p == v:
                raise ValueError(f"vertex {v} is its own parent")
        self.parent = par
        self._depth = self._depths()

    def _depths(self) -> tuple[int, ...]:
        n = len(self.parent)
        depth = [0] * n
        for v in range(n):
            if depth[v]:
                continue
            chain = []
            u = v
            on_chain = set()
            while u is not None and not depth[u]:
                if u in on_chain:
                    raise ValueError("parent relation contains a cycle")
                on_chain.add(u)
                chain.append(u)
                u = self.parent[u]
            d = depth[u] if u is not None else 0
            for w in reversed(chain):
                d += 1
                depth[w] = d
        return tuple(depth)

    @property
    def n(self) -> int:
        return len(self.parent)

    def depth(self, v: int) -> int:
        """Number of vertices on the path from ``v`` up to its root."""
        return self._depth[v]

    def height(self) -> int:
        return max(self._depth, default=0)

    def roots(self) -> list[int]:
        return [v for v, p in enumerate(self.parent) if p is None]

    def ancestors(self, v: int) -> list[int]:
        out = []
        p = self.parent[v]
        while p is not None:
            out.append(p)
            p = self.parent[p]
        return out

    def is_ancestor(self, a: int, v: int) -> bool:
        """True iff ``a`` is a strict ancestor of ``v``."""
        if self._depth[a] >= self._depth[v]:
            return False
        while self._depth[v] > self._depth[a]:
            v = self.parent[v]
        return v == a

    def __eq__(self, other):
        if not isinstance(other, EliminationForest):
            return NotImplemented
        return self.parent == other.parent

    def __repr__(self):
        return f"EliminationForest(n={self.n}, height={self.height()})"


def closure(f: EliminationForest) -> Graph:
    edges = [(a, v) for v in range(f.n) for a in f.ancestors(v)]
    return Graph(f.n, edges)


def height(f: EliminationForest) -> int:
    return f.height()


def is_elimination_forest(f: EliminationForest, g: Graph) -> bool:
    if f.n != g.n:
        raise ValueError(f"forest has {f.n} vertices, graph has {g.n}")
    return all(f.is_ancestor(u, v) or f.is_ancestor(v, u) for u, v in g.edges)


# -- centroid decomposition --------------------------------------------------

def _centroid_into(g: Graph, start: int, removed: list[bool],
                   parent: list, top: Optional[int]) -> None:
    """Centroid-decompose the tree containing ``start`` (ignoring removed
    vertices), hanging the decomposition below ``top``."""
    work = [(start, top)]
    while work:
        s, up = work.pop()
        order = [s]
        par = {s: -1}
        i = 0
        while i < len(order):
            u = order[i]
            i += 1
            for w in g.adj[u]:
                if not removed[w] and w not in par:
                    par[w] = u
                    order.append(w)
        size = len(order)
        sub = dict.fromkeys(order, 1)
        heavy = dict.fromkeys(order, 0)
        for u in reversed(order):
            p = par[u]
            if p >= 0:
                sub[p] += sub[u]
                if sub[u] > heavy[p]:
                    heavy[p] = sub[u]
        centroid = min(
            u for u in order if 2 * max(heavy[u], size - sub[u]) <= size
        )
        parent[centroid] = up
        removed[centroid] = True
        for w in sorted(g.adj[centroid], reverse=True):
            if not removed[w]:
                work.append((w, centroid))


def _is_tree(g: Graph) -> bool:
    return g.n >= 1 and g.m == g.n - 1 and len(connected_components(g)) == 1


def build_tree_centroid(t: Graph) -> EliminationForest:
    """Recursive centroid decomposition of a tree; height <= floor(log2 n) + 1."""
    if not _is_tree(t):
        raise GraphError("build_tree_centroid needs a tree")
    parent: list = [None] * t.n
    _centroid_into(t, 0, [False] * t.n, parent, None)
    return EliminationForest(parent)


def build_unicyclic(u: Graph) -> EliminationForest:
    """A cycle vertex as root above the centroid forest of what remains."""
    comps = connected_components(u)
    if len(comps) != 1 or comps[0].excess != 0:
        raise GraphError("build_unicyclic needs a connected unicyclic graph")
    root = find_cycle_vertex(u)
    parent: list = [None] * u.n
    removed = [False] * u.n
    removed[root] = True
    for w in sorted(u.adj[root]):
        if not removed[w]:
            _centroid_into(u, w, removed, parent, root)
    return EliminationForest(parent)


@dataclass(frozen=True)
class ComponentBound:
    """Accounting for one component of :func:`general_upper_bound`."""

    smallest_vertex: int
    order: int
    excess: int
    removed: int
    height: int

    @property
    def bound(self) -> int:
        log_k = self.order.bit_length() - 1
        if self.excess < 0:
            return log_k + 1
        return (self.excess + 1) + log_k + 1


def _cycle_cover(g: Graph, comp: list[int]) -> list[int]:
    """Vertices whose deletion leaves ``comp`` acyclic.

    One depth-first pass; each non-tree edge not already broken gets one of
    its endpoints deleted (the one with more neighbours, then the lower
    label). Every chosen vertex lies on the fundamental cycle of its edge, and
    at most excess + 1 vertices are chosen.
    """
    root = comp[0]
    seen = {root}
    tree_edges = set()
    stack = [(root, iter(sorted(g.adj[root])))]
    while stack:
        u, it = stack[-1]
        for w in it:
            if w not in seen:
                seen.add(w)
                tree_edges.add((min(u, w), max(u, w)))
                stack.append((w, iter(sorted(g.adj[w]))))
                break
        else:
            stack.pop()
    removed = []
    gone = set()
    for v in sorted(comp):
        for w in sorted(g.adj[v]):
            if w < v or (v, w) in tree_edges or v in gone or w in gone:
                continue
            pick = v if (len(g.adj[v]), -v) >= (len(g.adj[w]), -w) else w
            gone.add(pick)
            removed.append(pick)
    return removed


def general_upper_bound(g: Graph) -> tuple[EliminationForest, list[ComponentBound]]:
    """Upper-bound forest plus per-component removal accounting.

    Each component with cycles has a set of cycle vertices deleted until it
    is a forest; the deleted vertices form a chain of roots above the
    centroid decomposition of the remaining trees.
    """
    parent: list = [None] * g.n
    removed = [False] * g.n
    comps = connected_components(g)
    covers = []
    for comp in comps:
        verts = sorted(comp.vertices)
        top = None
        cover = _cycle_cover(g, verts) if comp.excess >= 0 else []
        for v in cover:
            parent[v] = top
            removed[v] = True
            top = v
        for v in verts:
            if not removed[v]:
                _centroid_into(g, v, removed, parent, top)
        covers.append(cover)
    forest = EliminationForest(parent)
    report = [
        ComponentBound(
            min(comp.vertices), comp.order, comp.excess, len(cover),
            max(forest.depth(v) for v in comp.vertices),
        )
        for comp, cover in zip(comps, covers)
    ]
    return forest, report


def build_general_upper(g: Graph) -> EliminationForest:
    return general_upper_bound(g)[0]


# -- orderings ---------------------------------------------------------------

def elimination_order_forest(g: Graph, order: Sequence[int]) -> EliminationForest:
    """Elimination tree of an ordering (first eliminated = deepest).

    Eliminating a vertex joins its remaining neighbours into a clique; its
    parent is the earliest-eliminated of those neighbours.
    """
    if sorted(order) != list(range(g.n)):
        raise ValueError("order must be a permutation of the vertices")
    pos = [0] * g.n
    for i, v in enumerate(order):
        pos[v] = i
    nbrs = [set(a) for a in g.adj]
    parent: list = [None] * g.n
    for v in order:
        later = nbrs[v]
        if later:
            parent[v] = min(later, key=pos.__getitem__)
        for w in later:
            nbrs[w].discard(v)
            nbrs[w] |= later - {w}
        nbrs[v] = set()
    return EliminationForest(parent)


def _min_degree_order(g: Graph) -> list[int]:
    nbrs = [set(a) for a in g.adj]
    alive = [True] * g.n
    heap = [(len(nbrs[v]), v) for v in range(g.n)]
    heapq.heapify(heap)
    order = []
    while heap:
        d, v = heapq.heappop(heap)
        if not alive[v] or d != len(nbrs[v]):
            continue
        alive[v] = False
        order.append(v)
        nb = nbrs[v]
        for w in nb:
            nbrs[w].discard(v)
            nbrs[w] |= nb - {w}
        for w in nb:
            heapq.heappush(heap, (len(nbrs[w]), w))
        nbrs[v] = set()
    return order


def greedy_heuristic(g: Graph) -> EliminationForest:
    """Minimum-degree elimination ordering turned into an elimination tree."""
    return elimination_order_forest(g, _min_degree_order(g))


def dfs_forest(g: Graph, roots: Optional[Sequence[int]] = None) -> EliminationForest:
    """Depth-first search forest; its closure always contains ``g``."""
    parent: list = [None] * g.n
    seen = [False] * g.n
    starts = list(roots) if roots is not None else []
    starts += [v for v in range(g.n) if v not in set(starts)]
    for r in starts:
        if seen[r]:
            continue
        seen[r] = True
        stack = [(r, iter(sorted(g.adj[r])))]
        while stack:
            u, it = stack[-1]
            for w in it:
                if not seen[w]:
                    seen[w] = True
                    parent[w] = u
                    stack.append((w, iter(sorted(g.adj[w]))))
                    break
            else:
                stack.pop()
    return EliminationForest(parent)


# -- serialization -----------------------------------------------------------

def format_forest(f: EliminationForest) -> str:
    return "".join(f"{v} {-1 if p is None else p}\n" for v, p in enumerate(f.parent))


def parse_forest(text: str) -> EliminationForest:
    rows = [line.split() for line in text.splitlines() if line.strip()]
    parent: list = [None] * len(rows)
    for row in rows:
        v, p = int(row[0]), int(row[1])
        if not 0 <= v < len(rows):
            raise ValueError(f"vertex {v} out of range")
        parent[v] = None if p < 0 else p
    return EliminationForest(parent)
