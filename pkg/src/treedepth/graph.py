"""Simple undirected graphs on vertices ``0..n-1`` and basic structure queries."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Iterator, Optional

import numpy as np

__all__ = [
    "Graph",
    "GraphError",
    "ComponentSummary",
    "connected_components",
    "diameter",
    "eccentricity_sweep",
    "longest_path_order",
    "find_cycle_vertex",
    "path_graph",
    "cycle_graph",
    "complete_graph",
    "star_graph",
    "empty_graph",
    "disjoint_union",
    "petersen_graph",
    "read_edge_list",
    "write_edge_list",
    "format_edge_list",
    "parse_edge_list",
]

LONGEST_PATH_LIMIT = 20


class GraphError(ValueError):
    pass


class Graph:
    """Immutable simple graph with dense integer labels.

    Edges are stored as sorted ``(u, v)`` pairs with ``u < v``; adjacency as a
    tuple of frozensets.
    """

    __slots__ = ("n", "edges", "adj", "_masks")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = ()):
        if n < 0:
            raise GraphError(f"negative order {n}")
        seen = set()
        nbrs: list[set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            u, v = int(u), int(v)
            if u == v:
                raise GraphError(f"loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge ({u}, {v}) outside 0..{n - 1}")
            if u > v:
                u, v = v, u
            if (u, v) in seen:
                raise GraphError(f"parallel edge ({u}, {v})")
            seen.add((u, v))
            nbrs[u].add(v)
            nbrs[v].add(u)
        self.n = n
        self.edges = tuple(sorted(seen))
        self.adj = tuple(frozenset(s) for s in nbrs)
        self._masks = None

    @property
    def m(self) -> int:
        return len(self.edges)

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def degrees(self) -> list[int]:
        return [len(a) for a in self.adj]

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adj[u]

    def vertices(self) -> range:
        return range(self.n)

    def adjacency_masks(self) -> np.ndarray:
        """Neighbourhoods as int64 bitmasks (only valid for n <= 62)."""
        if self.n > 62:
            raise GraphError("bitmask adjacency needs n <= 62")
        if self._masks is None:
            masks = np.zeros(self.n, dtype=np.int64)
            for v, nb in enumerate(self.adj):
                bits = 0
                for w in nb:
                    bits |= 1 << w
                masks[v] = bits
            self._masks = masks
        return self._masks

    def csr(self) -> tuple[np.ndarray, np.ndarray]:
        """(indptr, indices) arrays with sorted neighbour lists."""
        indptr = np.zeros(self.n + 1, dtype=np.int64)
        for v, nb in enumerate(self.adj):
            indptr[v + 1] = indptr[v] + len(nb)
        indices = np.empty(indptr[-1], dtype=np.int64)
        for v, nb in enumerate(self.adj):
            indices[indptr[v]:indptr[v + 1]] = sorted(nb)
        return indptr, indices

    def subgraph(self, vertices: Iterable[int]) -> tuple["Graph", list[int]]:
        """Induced subgraph relabelled to ``0..k-1``; also returns the label map."""
        labels = sorted(set(vertices))
        index = {v: i for i, v in enumerate(labels)}
        edges = [
            (index[u], index[w])
            for u in labels
            for w in self.adj[u]
            if w in index and u < w
        ]
        return Graph(len(labels), edges), labels

    def remove_vertex(self, v: int) -> "Graph":
        """Graph with ``v`` deleted; remaining vertices keep relative order."""
        keep = [u for u in range(self.n) if u != v]
        return self.subgraph(keep)[0]

    def remove_edge(self, u: int, v: int) -> "Graph":
        e = (min(u, v), max(u, v))
        return Graph(self.n, [f for f in self.edges if f != e])

    def __eq__(self, other) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self.edges == other.edges

    def __hash__(self) -> int:
        return hash((self.n, self.edges))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


@dataclass(frozen=True)
class ComponentSummary:
    vertices: frozenset
    order: int
    excess: int

    @property
    def kind(self) -> str:
        if self.excess < 0:
            return "tree"
        if self.excess == 0:
            return "unicyclic"
        return "complex"


def _bfs_order(g: Graph, source: int, seen: list[bool]) -> list[int]:
    seen[source] = True
    order = [source]
    queue = deque([source])
    while queue:
        u = queue.popleft()
        for w in g.adj[u]:
            if not seen[w]:
                seen[w] = True
                order.append(w)
                queue.append(w)
    return order


def _component_lists(g: Graph) -> Iterator[list[int]]:
    seen = [False] * g.n
    for v in range(g.n):
        if not seen[v]:
            yield _bfs_order(g, v, seen)


def connected_components(g: Graph) -> list[ComponentSummary]:
    """Components in order of their smallest vertex, with excess and kind."""
    out = []
    for comp in _component_lists(g):
        twice_edges = sum(len(g.adj[v]) for v in comp)
        k = len(comp)
        out.append(ComponentSummary(frozenset(comp), k, twice_edges // 2 - k))
    return out


def _check_connected(g: Graph, component: Iterable[int]) -> list[int]:
    comp = sorted(set(component))
    if not comp:
        raise GraphError("empty vertex set")
    inside = set(comp)
    seen = {comp[0]}
    queue = deque([comp[0]])
    while queue:
        u = queue.popleft()
        for w in g.adj[u]:
            if w in inside and w not in seen:
                seen.add(w)
                queue.append(w)
    if len(seen) != len(comp):
        raise GraphError("vertex set does not induce a connected subgraph")
    return comp


def diameter(g: Graph, component: Optional[Iterable[int]] = None) -> int:
    """Exact diameter (in edges) of the subgraph induced by ``component``.

    Uses breadth-first search from every vertex. ``component`` defaults to
    all of ``g``; a disconnected vertex set raises :class:`GraphError`.
    """
    from . import _kernels

    comp = _check_connected(g, range(g.n) if component is None else component)
    if len(comp) == 1:
        return 0
    sub = g if len(comp) == g.n else g.subgraph(comp)[0]
    indptr, indices = sub.csr()
    return int(_kernels.all_sources_diameter(indptr, indices))


def eccentricity_sweep(g: Graph, component: Iterable[int]) -> int:
    """Double-sweep lower bound on the diameter of a connected vertex set.

    The value is the length of an actual shortest path, so ``value + 1``
    vertices lie on a path subgraph.
    """
    comp = _check_connected(g, component)
    inside = set(comp)

    def farthest(src):
        dist = {src: 0}
        queue = deque([src])
        last = src
        while queue:
            u = queue.popleft()
            last = u
            for w in g.adj[u]:
                if w in inside and w not in dist:
                    dist[w] = dist[u] + 1
                    queue.append(w)
        return last, dist[last]

    a, _ = farthest(comp[0])
    _, d = farthest(a)
    return d


def longest_path_order(g: Graph, limit: int = LONGEST_PATH_LIMIT) -> int:
    """Number of vertices on a longest simple path (exact, subset DP).

    Raises :class:`GraphError` above ``limit`` vertices; use
    :func:`diameter` for a cheaper lower bound on large graphs.
    """
    from . import _kernels

    if g.n > limit:
        raise GraphError(
            f"longest_path_order is exact only up to {limit} vertices "
            f"(got {g.n}); fall back to diameter() + 1"
        )
    if g.n == 0:
        return 0
    best = 1
    # Run per component to keep the 2^k state space small.
    for comp in _component_lists(g):
        if len(comp) <= best:
            continue
        sub = g.subgraph(comp)[0]
        best = max(best, int(_kernels.longest_path(sub.adjacency_masks())))
    return best


def find_cycle_vertex(g: Graph) -> Optional[int]:
    """A vertex lying on some cycle, or ``None`` if ``g`` is a forest.

    Iterative depth-first search; the first back edge found closes a cycle
    through both of its endpoints.
    """
    parent = [-1] * g.n
    state = [0] * g.n  # 0 unseen, 1 on stack, 2 done
    for root in range(g.n):
        if state[root]:
            continue
        state[root] = 1
        stack = [(root, iter(sorted(g.adj[root])))]
        while stack:
            u, it = stack[-1]
            for w in it:
                if w == parent[u]:
                    continue
                if state[w] == 1:
                    return u
                if state[w] == 0:
                    parent[w] = u
                    state[w] = 1
                    stack.append((w, iter(sorted(g.adj[w]))))
                    break
            else:
                state[u] = 2
                stack.pop()
    return None


# -- constructors -----------------------------------------------------------

def empty_graph(n: int) -> Graph:
    return Graph(n)


def path_graph(n: int) -> Graph:
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise GraphError("a cycle needs at least 3 vertices")
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def complete_graph(n: int) -> Graph:
    return Graph(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def star_graph(leaves: int) -> Graph:
    return Graph(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def petersen_graph() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph(10, outer + spokes + inner)


def disjoint_union(*graphs: Graph) -> Graph:
    edges = []
    offset = 0
    for h in graphs:
        edges.extend((u + offset, v + offset) for u, v in h.edges)
        offset += h.n
    return Graph(offset, edges)


# -- edge-list format -------------------------------------------------------

def format_edge_list(g: Graph) -> str:
    lines = [f"{g.n} {g.m}"]
    lines.extend(f"{u} {v}" for u, v in g.edges)
    return "\n".join(lines) + "\n"


def parse_edge_list(text: str) -> Graph:
    """Parse ``n m`` followed by ``m`` lines ``u v`` with ``u < v``."""
    rows = [line.split() for line in text.splitlines() if line.strip()]
    if not rows or len(rows[0]) != 2:
        raise GraphError("header must be 'n m'")
    n, m = (int(x) for x in rows[0])
    body = rows[1:]
    if len(body) != m:
        raise GraphError(f"header declares {m} edges, found {len(body)}")
    edges = []
    for lineno, row in enumerate(body, start=2):
        if len(row) != 2:
            raise GraphError(f"line {lineno}: expected 'u v'")
        u, v = int(row[0]), int(row[1])
        if not 0 <= u < v < n:
            raise GraphError(f"line {lineno}: need 0 <= u < v < n, got {u} {v}")
        edges.append((u, v))
    return Graph(n, edges)


def read_edge_list(path) -> Graph:
    with open(path) as fh:
        return parse_edge_list(fh.read())


def write_edge_list(g: Graph, path) -> None:
    with open(path, "w") as fh:
        fh.write(format_edge_list(g))
