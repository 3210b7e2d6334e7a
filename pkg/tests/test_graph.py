import numpy as np
import pytest
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import shortest_path

from treedepth.graph import (
    Graph,
    GraphError,
    complete_graph,
    connected_components,
    cycle_graph,
    diameter,
    disjoint_union,
    eccentricity_sweep,
    empty_graph,
    find_cycle_vertex,
    format_edge_list,
    longest_path_order,
    parse_edge_list,
    path_graph,
    star_graph,
)

from conftest import random_connected_graph, random_graph


def test_graph_rejects_loops_and_parallel_edges():
    with pytest.raises(GraphError):
        Graph(3, [(1, 1)])
    with pytest.raises(GraphError):
        Graph(3, [(0, 1), (1, 0)])
    with pytest.raises(GraphError):
        Graph(3, [(0, 3)])


def test_degree_sum(rng):
    for _ in range(20):
        g = random_graph(rng, 15, 0.3)
        assert sum(g.degrees()) == 2 * g.m
        assert all(u in g.adj[v] for v in range(g.n) for u in g.adj[v])


def test_components_examples():
    (c,) = connected_components(path_graph(4))
    assert (c.order, c.excess, c.kind) == (4, -1, "tree")

    comps = connected_components(empty_graph(3))
    assert [(c.order, c.excess) for c in comps] == [(1, -1)] * 3

    comps = connected_components(disjoint_union(complete_graph(3), complete_graph(2)))
    assert [(c.order, c.excess, c.kind) for c in comps] == [(3, 0, "unicyclic"), (2, -1, "tree")]
    assert connected_components(complete_graph(4))[0].kind == "complex"


def test_components_partition_vertices_and_edges(rng):
    for _ in range(30):
        g = random_graph(rng, 25, 0.06)
        comps = connected_components(g)
        assert sum(c.order for c in comps) == g.n
        assert sum(c.order + c.excess for c in comps) == g.m
        assert set().union(*(c.vertices for c in comps)) == set(range(g.n))


def test_diameter_examples():
    assert diameter(path_graph(15)) == 14
    assert diameter(cycle_graph(6)) == 3
    assert diameter(complete_graph(4)) == 1
    assert diameter(complete_graph(1)) == 0


def test_diameter_rejects_disconnected():
    with pytest.raises(GraphError):
        diameter(empty_graph(2))
    with pytest.raises(GraphError):
        diameter(path_graph(4), [0, 2])


def test_diameter_matches_scipy(rng):
    for _ in range(20):
        g = random_connected_graph(rng, 30, 0.05)
        rows, cols = zip(*g.edges)
        a = csr_matrix((np.ones(g.m), (rows, cols)), shape=(g.n, g.n))
        dist = shortest_path(a, directed=False, unweighted=True)
        assert diameter(g) == int(dist.max())
        assert eccentricity_sweep(g, range(g.n)) <= diameter(g)


def test_diameter_of_component_subset():
    g = disjoint_union(path_graph(5), cycle_graph(6))
    assert diameter(g, range(5)) == 4
    assert diameter(g, range(5, 11)) == 3


def _brute_longest_path(g):
    best = min(g.n, 1)

    def extend(path, seen):
        nonlocal best
        best = max(best, len(path))
        for w in g.adj[path[-1]]:
            if w not in seen:
                seen.add(w)
                path.append(w)
                extend(path, seen)
                path.pop()
                seen.discard(w)

    for v in range(g.n):
        extend([v], {v})
    return best


def test_longest_path_examples():
    assert longest_path_order(path_graph(5)) == 5
    assert longest_path_order(cycle_graph(5)) == 5
    assert longest_path_order(star_graph(3)) == 3
    assert longest_path_order(empty_graph(4)) == 1


def test_longest_path_matches_brute_force(rng):
    for _ in range(40):
        g = random_graph(rng, rng.randint(1, 9), rng.choice([0.2, 0.4, 0.6]))
        assert longest_path_order(g) == _brute_longest_path(g)


def test_longest_path_limit():
    with pytest.raises(GraphError, match="diameter"):
        longest_path_order(path_graph(21))
    assert longest_path_order(path_graph(21), limit=21) == 21


def test_diameter_below_longest_path(rng):
    for _ in range(30):
        g = random_connected_graph(rng, rng.randint(1, 14), 0.15)
        assert diameter(g) + 1 <= longest_path_order(g)


def test_find_cycle_vertex_examples():
    assert find_cycle_vertex(path_graph(6)) is None
    assert find_cycle_vertex(star_graph(4)) is None
    assert find_cycle_vertex(cycle_graph(4)) in range(4)
    paw = Graph(4, [(0, 1), (1, 2), (0, 2), (2, 3)])
    assert find_cycle_vertex(paw) in {0, 1, 2}
    # pendant listed first must still not be returned
    paw2 = Graph(4, [(0, 1), (1, 2), (2, 3), (1, 3)])
    assert find_cycle_vertex(paw2) in {1, 2, 3}


def test_find_cycle_vertex_iff_forest(rng):
    for _ in range(60):
        g = random_graph(rng, rng.randint(1, 12), rng.choice([0.1, 0.2, 0.3]))
        v = find_cycle_vertex(g)
        is_forest = g.m == g.n - len(connected_components(g))
        assert (v is None) == is_forest
        if v is not None:
            # v on a cycle <=> deleting it lowers the cyclomatic number
            h = g.remove_vertex(v)
            before = g.m - g.n + len(connected_components(g))
            after = h.m - h.n + len(connected_components(h))
            assert after < before


def test_edge_list_round_trip(rng):
    g = random_graph(rng, 12, 0.3)
    assert parse_edge_list(format_edge_list(g)) == g
    assert format_edge_list(path_graph(3)) == "3 2\n0 1\n1 2\n"


@pytest.mark.parametrize(
    "text",
    ["3 1\n1 1\n", "3 2\n0 1\n0 1\n", "3 1\n1 0\n", "3 2\n0 1\n", "3 1\n0 3\n", "oops\n"],
)
def test_edge_list_errors(text):
    with pytest.raises(GraphError):
        parse_edge_list(text)
