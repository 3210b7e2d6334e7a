import math
from collections import Counter

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from treedepth.graph import complete_graph, connected_components, format_edge_list
from treedepth.models import (
    RandomSeed,
    labeled_tree_with_code,
    mix_seed,
    prufer_decode,
    prufer_encode,
    sample_gnm,
    sample_gnp,
    sample_labeled_tree,
    sample_regular,
    sparse_p,
    splitmix64,
)


def test_splitmix64_reference_value():
    # first output of the reference SplitMix64 generator seeded with 0
    assert splitmix64(0) == 0xE220A8397B1DCDAF


def test_seed_streams_differ_by_trial():
    a = RandomSeed(7, 0).rng().integers(0, 2**32, size=4)
    b = RandomSeed(7, 1).rng().integers(0, 2**32, size=4)
    assert not np.array_equal(a, b)
    assert mix_seed(1, "dense", 10) != mix_seed(1, "dense", 11)


def test_seed_validation():
    with pytest.raises(ValueError):
        RandomSeed(-1)
    with pytest.raises(ValueError):
        RandomSeed(1, -1)


def test_gnp_extremes():
    assert sample_gnp(7, 0.0, RandomSeed(1)).m == 0
    assert sample_gnp(7, 1.0, RandomSeed(1)) == complete_graph(7)
    with pytest.raises(ValueError):
        sample_gnp(5, 1.5, RandomSeed(1))
    with pytest.raises(ValueError):
        sample_gnp(5, -0.1, RandomSeed(1))


def test_gnp_mean_edge_count():
    trials = 10_000
    counts = np.array([sample_gnp(10, 0.3, RandomSeed(3, t)).m for t in range(trials)])
    se = math.sqrt(45 * 0.3 * 0.7 / trials)
    assert abs(counts.mean() - 13.5) <= 3 * se


def test_gnp_pairs_are_uniform():
    # every pair equally likely under the geometric-skip sampler
    freq = Counter()
    trials = 4000
    for t in range(trials):
        freq.update(sample_gnp(6, 0.2, RandomSeed(11, t)).edges)
    se = math.sqrt(0.2 * 0.8 / trials)
    assert len(freq) == 15
    assert all(abs(c / trials - 0.2) <= 4 * se for c in freq.values())


def test_gnp_deterministic():
    a = sample_gnp(200, 0.05, RandomSeed(99, 4))
    b = sample_gnp(200, 0.05, RandomSeed(99, 4))
    assert format_edge_list(a) == format_edge_list(b)


def test_sparse_p():
    assert sparse_p(100, 2.0) == 0.02
    with pytest.raises(ValueError):
        sparse_p(3, 4.0)


def test_gnm_extremes_and_errors():
    assert sample_gnm(6, 0, RandomSeed(1)).m == 0
    assert sample_gnm(6, 15, RandomSeed(1)) == complete_graph(6)
    assert sample_gnm(30, 200, RandomSeed(1)).m == 200
    with pytest.raises(ValueError):
        sample_gnm(4, 7, RandomSeed(1))


def test_gnm_single_edge_uniform():
    trials = 6000
    freq = Counter(sample_gnm(4, 1, RandomSeed(5, t)).edges[0] for t in range(trials))
    se = math.sqrt((1 / 6) * (5 / 6) / trials)
    assert len(freq) == 6
    assert all(abs(c / trials - 1 / 6) <= 3 * se for c in freq.values())


@pytest.mark.parametrize("n,d", [(10, 1), (12, 2), (14, 3), (20, 4), (10, 5)])
def test_regular_degrees(n, d):
    for t in range(10):
        g = sample_regular(n, d, RandomSeed(17, t))
        assert g.degrees() == [d] * n


def test_regular_special_shapes():
    g = sample_regular(12, 2, RandomSeed(2))
    assert all(c.excess == 0 for c in connected_components(g))
    assert sample_regular(10, 1, RandomSeed(2)).m == 5


def test_regular_errors():
    with pytest.raises(ValueError):
        sample_regular(5, 3, RandomSeed(1))
    with pytest.raises(ValueError):
        sample_regular(4, 4, RandomSeed(1))


def test_tree_small_cases():
    assert sample_labeled_tree(1, RandomSeed(1)).m == 0
    assert sample_labeled_tree(2, RandomSeed(1)).edges == ((0, 1),)


def test_tree_order_three_uniform():
    trials = 10_000
    freq = Counter(sample_labeled_tree(3, RandomSeed(8, t)).edges for t in range(trials))
    se = math.sqrt((1 / 3) * (2 / 3) / trials)
    assert len(freq) == 3
    assert all(abs(c / trials - 1 / 3) <= 3 * se for c in freq.values())


def test_tree_order_four_uniform():
    # 4^2 = 16 labeled trees on four vertices
    trials = 8000
    freq = Counter(sample_labeled_tree(4, RandomSeed(9, t)).edges for t in range(trials))
    assert len(freq) == 16
    se = math.sqrt((1 / 16) * (15 / 16) / trials)
    assert all(abs(c / trials - 1 / 16) <= 4 * se for c in freq.values())


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 60), st.integers(0, 2**32))
def test_tree_is_tree_and_prufer_round_trip(k, base):
    t, code = labeled_tree_with_code(k, RandomSeed(base))
    assert t.m == k - 1
    assert len(connected_components(t)) == 1
    if k > 2:
        assert prufer_encode(t) == code


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(0, 7), min_size=6, max_size=6))
def test_prufer_decode_encode(code):
    tree_edges = prufer_decode(code, 8)
    from treedepth.graph import Graph

    assert prufer_encode(Graph(8, tree_edges)) == code
