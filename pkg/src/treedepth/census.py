"""Component census of sparse graphs and random-tree statistics."""

from __future__ import annotations

import math
from collections import Counter, deque
from dataclasses import dataclass, field
from typing import Optional

from .graph import Graph, GraphError, connected_components

__all__ = [
    "ComponentCensus",
    "TreeStats",
    "classify",
    "expected_tree_count",
    "log_expected_tree_count",
    "tree_height_and_diameter",
    "tree_diameter",
    "mean_tree_diameter",
    "census_rows",
]


@dataclass
class ComponentCensus:
    histogram: Counter = field(default_factory=Counter)  # (order, excess) -> count

    @property
    def largest_order(self) -> int:
        return max((k for k, _ in self.histogram), default=0)

    @property
    def max_excess(self) -> int:
        return max((ell for _, ell in self.histogram), default=-1)

    @property
    def tree_counts(self) -> dict[int, int]:
        return {k: c for (k, ell), c in sorted(self.histogram.items()) if ell == -1}

    @property
    def components(self) -> int:
        return sum(self.histogram.values())

    def only_trees_and_unicycles(self) -> bool:
        return self.max_excess <= 0


def classify(g: Graph) -> ComponentCensus:
    return ComponentCensus(Counter((c.order, c.excess) for c in connected_components(g)))


def log_expected_tree_count(n: int, c: float, k: int) -> float:
    if c <= 0 or k < 1:
        raise ValueError("need c > 0 and k >= 1")
    log_fact = math.fsum(math.log(i) for i in range(2, k + 1))
    return (math.log(n) + (k - 2) * math.log(k) - log_fact
            + (k - 1) * math.log(c) - k * c)


def expected_tree_count(n: int, c: float, k: int) -> float:
    """n k^(k-2) / k! * c^(k-1) * e^(-kc): expected number of tree components
    of order k in G(n, c/n), evaluated in log space."""
    return math.exp(log_expected_tree_count(n, c, k))


@dataclass(frozen=True)
class TreeStats:
    k: int
    height: int  # vertices on the longest root-to-leaf path
    diameter: int  # edges


def _bfs_far(g: Graph, src: int) -> tuple[int, int, dict]:
    dist = {src: 0}
    queue = deque([src])
    far = src
    while queue:
        u = queue.popleft()
        if dist[u] > dist[far]:
            far = u
        for w in g.adj[u]:
            if w not in dist:
                dist[w] = dist[u] + 1
                queue.append(w)
    return far, dist[far], dist


def tree_diameter(g: Graph, start: int) -> int:
    """Diameter of the tree containing ``start`` by double BFS."""
    a, _, _ = _bfs_far(g, start)
    return _bfs_far(g, a)[1]


def tree_height_and_diameter(t: Graph, root: int = 0) -> TreeStats:
    if t.n == 0 or t.m != t.n - 1 or len(connected_components(t)) != 1:
        raise GraphError("expected a tree")
    if not 0 <= root < t.n:
        raise GraphError(f"root {root} not a vertex")
    _, ecc, _ = _bfs_far(t, root)
    return TreeStats(t.n, ecc + 1, tree_diameter(t, root))


def mean_tree_diameter(g: Graph, k: int) -> Optional[float]:
    diams = [
        tree_diameter(g, min(c.vertices))
        for c in connected_components(g)
        if c.excess == -1 and c.order == k
    ]
    if not diams:
        return None
    return sum(diams) / len(diams)


def census_rows(census: ComponentCensus, seed, n: int, c: float) -> list[tuple]:
    """Rows ``seed,n,c,k,ell,count`` sorted by (k, ell)."""
    return [(seed, n, c, k, ell, cnt) for (k, ell), cnt in sorted(census.histogram.items())]
