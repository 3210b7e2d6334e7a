"""Exact tree-depth / tree-width for small graphs and a path-based lower bound."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Union

from . import _kernels
from .elimination import EliminationForest
from .graph import (
    Graph,
    GraphError,
    connected_components,
    diameter,
    eccentricity_sweep,
    longest_path_order,
)

__all__ = [
    "SolveResult",
    "TREEDEPTH_LIMIT",
    "TREEWIDTH_LIMIT",
    "treedepth_exact",
    "treewidth_exact",
    "td_lower_bound_path",
    "ordering_width",
]

TREEDEPTH_LIMIT = 20
TREEWIDTH_LIMIT = 18
# Above this order the lower-bound fallback uses a double BFS sweep
# instead of the exact all-pairs diameter.
EXACT_DIAMETER_LIMIT = 20000


@dataclass(frozen=True)
class SolveResult:
    value: int
    witness: Union[EliminationForest, tuple, None]
    method: str  # "exact" | "lower-bound" | "upper-bound"


def _treedepth_component(sub: Graph, parent: list, labels: list[int]) -> int:
    td, choice = _kernels.treedepth_table(sub.adjacency_masks())
    adj = sub.adjacency_masks()
    full = (1 << sub.n) - 1
    work = [(full, None)]
    while work:
        mask, up = work.pop()
        if not mask:
            continue
        v = int(choice[mask])
        if v < 0:
            low = mask & -mask
            comp = int(_closure(adj, mask, low))
            work.append((comp, up))
            work.append((mask ^ comp, up))
            continue
        parent[labels[v]] = up
        work.append((mask ^ (1 << v), labels[v]))
    return int(td[full])


def _closure(adj, mask: int, start: int) -> int:
    reach = frontier = start
    while frontier:
        new = 0
        f = frontier
        while f:
            low = f & -f
            new |= int(adj[low.bit_length() - 1])
            f ^= low
        new &= mask & ~reach
        reach |= new
        frontier = new
    return reach


def treedepth_exact(g: Graph, limit: int = TREEDEPTH_LIMIT) -> SolveResult:
    """Exact tree-depth with an optimal elimination forest.

    Per connected component C, td(C) = 1 + min_v td(C - v), tabulated over
    all vertex subsets of C; td(g) is the maximum over components. Ties in
    the choice of root go to the lowest label.
    """
    comps = connected_components(g)
    big = [c.order for c in comps if c.order > limit]
    if big:
        raise GraphError(
            f"component of order {max(big)} exceeds exact tree-depth limit {limit}"
        )
    parent: list = [None] * g.n
    value = 0
    for comp in comps:
        if comp.order == 1:
            value = max(value, 1)
            continue
        sub, labels = g.subgraph(comp.vertices)
        value = max(value, _treedepth_component(sub, parent, labels))
    return SolveResult(value, EliminationForest(parent), "exact")


def ordering_width(g: Graph, order) -> int:
    """Max number of later neighbours over an elimination ordering with fill."""
    nbrs = [set(a) for a in g.adj]
    width = 0 if g.n else -1
    for v in order:
        later = nbrs[v]
        width = max(width, len(later))
        for w in later:
            nbrs[w].discard(v)
            nbrs[w] |= later - {w}
        nbrs[v] = set()
    return width


def treewidth_exact(g: Graph, limit: int = TREEWIDTH_LIMIT) -> SolveResult:
    """Exact tree-width by subset DP over elimination orderings.

    Solved per component (tree-width is the max over components); the witness
    is an elimination ordering of all vertices achieving the width.
    """
    comps = connected_components(g)
    big = [c.order for c in comps if c.order > limit]
    if big:
        raise GraphError(
            f"component of order {max(big)} exceeds exact tree-width limit {limit}"
        )
    if g.n == 0:
        return SolveResult(-1, (), "exact")
    order = []
    value = 0
    for comp in comps:
        if comp.order == 1:
            order.extend(comp.vertices)
            continue
        sub, labels = g.subgraph(comp.vertices)
        tw, last = _kernels.treewidth_table(sub.adjacency_masks())
        full = (1 << sub.n) - 1
        value = max(value, int(tw[full]))
        local = []
        s = full
        while s:
            v = int(last[s])
            local.append(labels[v])
            s ^= 1 << v
        order.extend(reversed(local))
    return SolveResult(value, tuple(order), "exact")


def td_lower_bound_path(g: Graph, path_limit: int = 20,
                        use_diameter: Optional[bool] = None) -> int:
    """floor(log2 t) + 1 where t counts the vertices of a path in ``g``.

    t is the longest-path order when ``g`` has at most ``path_limit`` vertices,
    otherwise diameter + 1 of the largest component (a shortest path between
    an eccentric pair). ``use_diameter=True`` forces the fallback.
    """
    if g.n == 0:
        return 0
    if use_diameter is None:
        use_diameter = g.n > path_limit
    if not use_diameter:
        t = longest_path_order(g, limit=path_limit)
    else:
        largest = max(connected_components(g), key=lambda c: (c.order, -min(c.vertices)))
        if largest.order <= EXACT_DIAMETER_LIMIT:
            t = diameter(g, largest.vertices) + 1
        else:
            t = eccentricity_sweep(g, largest.vertices) + 1
    return t.bit_length()
