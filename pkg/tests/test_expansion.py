import math
from fractions import Fraction

import numpy as np
import pytest

from treedepth.expansion import (
    BalancedPartition,
    boundary_ratio,
    cheeger_exact,
    cut_base,
    cut_ratio,
    dense_bound,
    dense_log_tail,
    dense_separator_tail,
    dense_threshold,
    explicit_tw_fraction,
    find_balanced_kpartition,
    gamma0_search,
    is_balanced_kpartition,
    lambda2_estimate,
    partition_window,
    sparse_cut_tail,
    tw_lower_from_expansion,
    vertex_expansion_exact,
)
from treedepth.graph import (
    Graph,
    GraphError,
    complete_graph,
    cycle_graph,
    empty_graph,
    path_graph,
    petersen_graph,
)
from treedepth.models import RandomSeed, sample_regular
from treedepth.solvers import treewidth_exact

from conftest import random_connected_graph, random_graph
from oracles import brute_balanced_partition_exists, brute_cheeger, brute_vertex_expansion


# -- balanced partitions ------------------------------------------------------

def test_partition_window():
    assert partition_window(7, 1) == (2, 3)
    assert partition_window(10, 0) == (3, 6)


def test_is_balanced_examples():
    part = BalancedPartition(frozenset({0, 1}), frozenset({2, 5}), frozenset({3, 4, 6}), 1)
    assert is_balanced_kpartition(path_graph(7), part)
    k7 = BalancedPartition(frozenset({0, 1}), frozenset({2, 3, 4}), frozenset({5, 6}), 2)
    assert not is_balanced_kpartition(complete_graph(7), k7)
    wrong_k = BalancedPartition(frozenset({0, 1}), frozenset({2, 5}), frozenset({3, 4, 6}), 2)
    assert not is_balanced_kpartition(path_graph(7), wrong_k)


def test_is_balanced_rejects_bad_sets():
    with pytest.raises(ValueError):
        is_balanced_kpartition(path_graph(3), BalancedPartition(
            frozenset({0}), frozenset({0, 1}), frozenset({2}), 1))
    with pytest.raises(ValueError):
        is_balanced_kpartition(path_graph(4), BalancedPartition(
            frozenset({0}), frozenset({1}), frozenset({2}), 0))


def test_find_balanced_examples():
    part = find_balanced_kpartition(path_graph(7), 1)
    assert part is not None and is_balanced_kpartition(path_graph(7), part)
    assert find_balanced_kpartition(complete_graph(7), 2) is None
    assert treewidth_exact(complete_graph(7)).value > 2
    with pytest.raises(GraphError):
        find_balanced_kpartition(path_graph(16), 1)


def test_find_balanced_matches_labelling_search(rng):
    for _ in range(25):
        g = random_graph(rng, rng.randint(4, 7), rng.choice([0.2, 0.4, 0.6]))
        for k in range(g.n):
            found = find_balanced_kpartition(g, k)
            assert (found is not None) == brute_balanced_partition_exists(g, k)
            if found is not None:
                assert is_balanced_kpartition(g, found)


def test_kloks_lemma_on_random_graphs(rng):
    for _ in range(100):
        g = random_graph(rng, 10, rng.choice([0.1, 0.2, 0.3, 0.5, 0.7]))
        tw = treewidth_exact(g).value
        for k in range(tw, g.n - 3):
            assert find_balanced_kpartition(g, k) is not None


# -- exact expansion ----------------------------------------------------------

def test_cheeger_examples():
    r = cheeger_exact(complete_graph(2))
    assert r.value == 1 and len(r.witness) == 1
    r = cheeger_exact(complete_graph(4))
    assert r.value == Fraction(2, 3) and (r.numerator, r.denominator) == (4, 6)
    r = cheeger_exact(cycle_graph(6))
    assert r.value == Fraction(1, 3) and (r.numerator, r.denominator) == (2, 6)


def test_vertex_expansion_examples():
    assert vertex_expansion_exact(complete_graph(4)).value == 1
    # |X| <= n/2 = 1.5 excludes the endpoint pair (ratio 1/2); a single endpoint gives 1
    r = vertex_expansion_exact(path_graph(3))
    assert r.value == 1 and r.witness == frozenset({0})
    assert boundary_ratio(path_graph(3), {0, 2}) == Fraction(1, 2)
    assert vertex_expansion_exact(cycle_graph(4)).value == 1


def test_expansion_errors():
    with pytest.raises(GraphError):
        cheeger_exact(empty_graph(4))
    with pytest.raises(GraphError):
        vertex_expansion_exact(Graph(1))
    with pytest.raises(GraphError):
        cheeger_exact(path_graph(25))


def test_expansion_matches_enumeration(rng):
    for _ in range(30):
        g = random_connected_graph(rng, rng.randint(2, 10), rng.choice([0.1, 0.3, 0.6]))
        phi = cheeger_exact(g)
        alpha = vertex_expansion_exact(g)
        assert math.isclose(float(phi.value), brute_cheeger(g))
        assert math.isclose(float(alpha.value), brute_vertex_expansion(g))
        assert 0 < len(phi.witness) <= g.n / 2 and cut_ratio(g, phi.witness) == phi.value
        assert 0 < len(alpha.witness) <= g.n / 2
        assert boundary_ratio(g, alpha.witness) == alpha.value
        assert 0 <= phi.value <= 1


def test_vertex_expansion_dominates_conductance_on_regular_graphs():
    for t in range(15):
        g = sample_regular(12, 3, RandomSeed(31, t))
        try:
            phi = cheeger_exact(g)
        except GraphError:
            continue
        assert vertex_expansion_exact(g).value >= phi.value


# -- spectral ---------------------------------------------------------------

def test_lambda2_examples():
    r = lambda2_estimate(complete_graph(4))
    assert abs(r.lambda2 + 1) <= 1e-6
    assert math.isclose(r.conductance_bound, 2 / 3, abs_tol=1e-6)
    assert math.isclose(r.conductance_bound, float(cheeger_exact(complete_graph(4)).value), abs_tol=1e-6)

    r = lambda2_estimate(cycle_graph(4))
    assert abs(r.lambda2) <= 1e-6
    assert math.isclose(r.conductance_bound, 0.5, abs_tol=1e-6)
    assert cheeger_exact(cycle_graph(4)).value == Fraction(1, 2)

    r = lambda2_estimate(petersen_graph())
    assert abs(r.lambda2 - 1) <= 1e-6
    assert math.isclose(r.conductance_bound, 1 / 3, abs_tol=1e-6)
    assert r.conductance_bound <= float(cheeger_exact(petersen_graph()).value) + 1e-9


def test_lambda2_matches_eigvalsh():
    for t in range(10):
        g = sample_regular(16, 4, RandomSeed(41, t))
        A = np.zeros((g.n, g.n))
        for u, v in g.edges:
            A[u, v] = A[v, u] = 1
        ref = np.sort(np.linalg.eigvalsh(A))[-2]
        try:
            r = lambda2_estimate(g, tolerance=1e-10)
        except GraphError:
            continue
        assert abs(r.lambda2 - ref) <= 1e-6


def test_lambda2_cycles():
    for n in (5, 6, 9):
        r = lambda2_estimate(cycle_graph(n))
        assert math.isclose(r.lambda2, 2 * math.cos(2 * math.pi / n), abs_tol=1e-6)


def test_lambda2_errors():
    with pytest.raises(GraphError):
        lambda2_estimate(path_graph(4))
    with pytest.raises(GraphError):
        lambda2_estimate(Graph(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]))
    with pytest.raises(RuntimeError):
        lambda2_estimate(petersen_graph(), tolerance=0.0, max_iter=5)


def test_spectral_bound_below_conductance():
    for t in range(20):
        g = sample_regular(12, 3, RandomSeed(51, t))
        try:
            r = lambda2_estimate(g)
        except GraphError:
            continue
        assert r.conductance_bound <= float(cheeger_exact(g).value) + 1e-9


# -- bounds ---------------------------------------------------------------------

def test_tw_lower_examples():
    assert tw_lower_from_expansion(0, 10) == 0
    assert tw_lower_from_expansion(1, 9) == 2
    assert treewidth_exact(complete_graph(9)).value == 8
    assert tw_lower_from_expansion(Fraction(1, 3), 4) == 0
    with pytest.raises(ValueError):
        tw_lower_from_expansion(-1, 3)


def test_tw_lower_below_exact_on_regular_graphs():
    for t in range(50):
        g = sample_regular(14, 3, RandomSeed(61, t))
        try:
            alpha = vertex_expansion_exact(g).value
        except GraphError:
            alpha = 0
        assert tw_lower_from_expansion(alpha, g.n) <= treewidth_exact(g).value


def test_dense_tail_values():
    assert math.isclose(dense_separator_tail(10, 1.0, 1.0), math.exp(10 * math.log(3) - 200 / 9))
    assert math.isclose(dense_separator_tail(10, 1.0, 1.0), 1.3189e-5, rel_tol=1e-4)
    with pytest.raises(ValueError):
        dense_separator_tail(10, 0.0, 1.0)


def test_dense_tail_sign_flip():
    for n, c in [(100, 3.0), (1000, 10.0), (50, 25.0)]:
        p = c / n
        f0 = dense_threshold(c)
        assert math.isclose(f0, 3 * math.sqrt(math.log(3) / (2 * p * n)))
        assert abs(dense_log_tail(n, p, f0)) < 1e-9 * n
        assert dense_log_tail(n, p, f0 * 1.01) < 0 < dense_log_tail(n, p, f0 * 0.99)
        assert dense_bound(n, p, f0 * 1.01).vanishing
        assert not dense_bound(n, p, f0 * 0.99).vanishing


def test_dense_tail_decreasing_in_n():
    p, f = 0.5, 0.8
    ns = [n for n in range(5, 60) if 2 * f * f / 9 * p * n > math.log(3)]
    vals = [dense_separator_tail(n, p, f) for n in ns]
    assert all(a > b for a, b in zip(vals, vals[1:]))


def test_sparse_cut_tail_example():
    r = sparse_cut_tail(1000, c=2.0, alpha=1.0, delta=1.0, gamma=0.01)
    assert math.isclose(r.beta, 0.33)
    first = (math.e / 0.01) ** 0.01
    second = (0.01 * math.e * 2 / 0.33) ** 0.33
    assert math.isclose(first, 1.05765, rel_tol=1e-4)
    assert math.isclose(second, 0.55150, rel_tol=1e-4)
    assert math.isclose(r.base, first * second, rel_tol=1e-12)
    assert r.base < 1
    assert math.isclose(r.bound, 0.01 * 1000**2 * r.base**1000, rel_tol=1e-9)


def test_sparse_cut_tail_range():
    with pytest.raises(ValueError):
        sparse_cut_tail(100, 2.0, 1.0, 1.0, 1 / 7)
    with pytest.raises(ValueError):
        sparse_cut_tail(100, 2.0, 1.0, 1.0, 0.0)


def test_cut_base_vanishes_near_zero():
    vals = [cut_base(g, 2.0, 1.0, 1.0) for g in (1e-2, 1e-3, 1e-4, 1e-6, 1e-9)]
    assert all(a > b for a, b in zip(vals, vals[1:]))
    assert vals[-1] < 1e-2


def test_gamma0_search():
    g0 = gamma0_search(2.0, 0.5, 0.5)
    gmax = 0.25 / (6 + 0.5)
    assert 0 < g0 <= gmax
    if g0 < gmax:
        assert cut_base(g0, 2.0, 0.5, 0.5) < 1 <= cut_base(g0 + 2e-9, 2.0, 0.5, 0.5)
    for frac in (0.1, 0.5, 0.99):
        assert cut_base(g0 * frac, 2.0, 0.5, 0.5) < 1


def test_explicit_fraction():
    assert math.isclose(explicit_tw_fraction(2.0, 1.0, 1.0), 1 / (36 * math.e**3))
    assert math.isclose(explicit_tw_fraction(2.0, 1.0, 1.0), 0.00138, rel_tol=3e-3)
