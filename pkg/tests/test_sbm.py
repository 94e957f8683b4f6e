import warnings

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sbm_gof.netgraph import Graph, from_edges
from sbm_gof.sbm import (
    BalanceWarning,
    InfeasibleCommunityError,
    SbmError,
    SbmParams,
    balanced_labels,
    build_edge_probabilities,
    estimate_block_matrix,
    planted_block_matrix,
    read_block_matrix,
    read_labels,
    sample_adjacency,
    sample_labels,
    sample_sbm,
    sparsity_block_matrix,
    write_block_matrix,
    write_labels,
)
from sbm_gof.seeding import make_rng


def test_edge_probabilities_small():
    P = build_edge_probabilities([1, 1, 2], [[0.7, 0.3], [0.3, 0.7]])
    np.testing.assert_array_equal(P, [[0.7, 0.7, 0.3], [0.7, 0.7, 0.3], [0.3, 0.3, 0.7]])


def test_edge_probabilities_single_block():
    P = build_edge_probabilities(np.ones(6, dtype=int), [[0.2]])
    assert np.all(P == 0.2)


def test_edge_probabilities_two_equal_blocks():
    g = balanced_labels(50, 2)
    P = build_edge_probabilities(g, planted_block_matrix(2, 0.7, 0.3))
    assert np.all(P[:25, :25] == 0.7) and np.all(P[25:, 25:] == 0.7)
    assert np.all(P[:25, 25:] == 0.3) and np.all(P[25:, :25] == 0.3)


def test_edge_probabilities_errors():
    with pytest.raises(SbmError, match="1..2"):
        build_edge_probabilities([1, 3], [[0.5, 0.1], [0.1, 0.5]])
    with pytest.raises(SbmError, match="symmetric"):
        build_edge_probabilities([1, 2], [[0.5, 0.1], [0.2, 0.5]])


def test_params_validation():
    with pytest.raises(SbmError, match="strictly inside"):
        SbmParams([1, 2], [[1.0, 0.1], [0.1, 0.5]])
    with pytest.raises(SbmError, match="no members"):
        SbmParams([1, 1, 1], [[0.5, 0.1], [0.1, 0.5]])
    p = SbmParams([1, 1, 2, 2, 2, 2, 2, 2, 2, 2], [[0.5, 0.1], [0.1, 0.5]])
    assert p.is_balanced(0.3)  # 2 >= 0.3 * 10 / 2
    assert not p.is_balanced(0.5)


@given(st.integers(2, 5), st.integers(0, 2**32 - 1))
@settings(max_examples=40, deadline=None)
def test_edge_probabilities_relabel_invariant(k, seed):
    rng = np.random.default_rng(seed)
    g = rng.integers(1, k + 1, size=30)
    b = rng.uniform(0.05, 0.95, size=(k, k))
    b = (b + b.T) / 2
    perm = rng.permutation(k)  # new label perm[c] for old label c
    g2 = perm[g - 1] + 1
    b2 = np.empty_like(b)
    b2[np.ix_(perm, perm)] = b
    np.testing.assert_array_equal(build_edge_probabilities(g, b), build_edge_probabilities(g2, b2))


def test_sample_degenerate_probability_gives_empty_graph():
    g = sample_adjacency(np.full((20, 20), 1e-12), seed=1)
    assert g.n_edges == 0


def test_sample_is_deterministic():
    P = np.full((40, 40), 0.3)
    assert sample_adjacency(P, 9) == sample_adjacency(P, 9)
    assert sample_adjacency(P, 9) != sample_adjacency(P, 10)


def test_sample_density_concentrates():
    # 79800 pairs at p = 0.5: sd of the density is 0.0018, so [0.47, 0.53] is > 16 sd wide
    P = np.full((400, 400), 0.5)
    for seed in range(5):
        g = sample_adjacency(P, seed)
        assert 0.47 <= g.n_edges / (400 * 399 / 2) <= 0.53


@given(st.integers(1, 30), st.floats(0.0, 1.0), st.integers(0, 2**32 - 1))
@settings(max_examples=50, deadline=None)
def test_sampled_graph_invariants(n, p, seed):
    a = sample_adjacency(np.full((n, n), p), seed).adjacency
    assert np.array_equal(a, a.T)
    assert not a.diagonal().any()
    assert set(np.unique(a)) <= {0, 1}


def test_block_estimate_complete_graph():
    a = Graph(np.ones((4, 4), dtype=int) - np.eye(4, dtype=int))
    b = estimate_block_matrix(a, [1, 1, 1, 1], 1)
    assert b[0, 0] == pytest.approx(1 - 1 / 16)


def test_block_estimate_empty_graph():
    a = Graph(np.zeros((4, 4), dtype=int))
    assert estimate_block_matrix(a, [1, 1, 1, 1], 1)[0, 0] == pytest.approx(1 / 16)


def test_block_estimate_by_hand():
    # communities {0,1,2} and {3,4}; edges 0-1, 1-2, 2-3, 3-4
    a = from_edges(5, [(0, 1), (1, 2), (2, 3), (3, 4)])
    b = estimate_block_matrix(a, [1, 1, 1, 2, 2], 2)
    np.testing.assert_allclose(b, [[2 / 3, 1 / 6], [1 / 6, 1 - 1 / 25]])


def test_block_estimate_errors():
    a = from_edges(4, [(0, 1), (2, 3)])
    with pytest.raises(InfeasibleCommunityError) as exc:
        estimate_block_matrix(a, [1, 1, 1, 2], 2)
    assert exc.value.community == 2 and exc.value.size == 1
    with pytest.raises(InfeasibleCommunityError, match="community 3 has 0"):
        estimate_block_matrix(a, [1, 1, 2, 2], 3)
    with pytest.raises(SbmError, match="k0"):
        estimate_block_matrix(a, [1, 1, 1, 1], 0)


def test_block_estimate_balance_warning():
    a = Graph(np.ones((20, 20), dtype=int) - np.eye(20, dtype=int))
    with pytest.warns(BalanceWarning):
        estimate_block_matrix(a, [1] * 18 + [2] * 2, 2)  # 2 < 0.3 * 20 / 2


@given(st.integers(0, 2**32 - 1))
@settings(max_examples=30, deadline=None)
def test_single_block_estimate_is_global_density(seed):
    rng = np.random.default_rng(seed)
    n = int(rng.integers(2, 40))
    a = sample_adjacency(np.full((n, n), rng.uniform(0.05, 0.95)), seed)
    b = estimate_block_matrix(a, np.ones(n, dtype=int), 1)
    eps = 1 / n**2
    assert b[0, 0] == pytest.approx(np.clip(2 * a.n_edges / (n * (n - 1)), eps, 1 - eps))


@given(st.integers(2, 4), st.integers(0, 2**32 - 1))
@settings(max_examples=30, deadline=None)
def test_block_estimate_label_equivariance(k, seed):
    g = sample_labels(40, k, seed)
    a = sample_adjacency(np.full((40, 40), 0.4), seed + 1)
    perm = make_rng(seed, 7).permutation(k)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", BalanceWarning)
        b = estimate_block_matrix(a, g, k)
        b2 = estimate_block_matrix(a, perm[g - 1] + 1, k)
    np.testing.assert_allclose(b2[np.ix_(perm, perm)], b)


def test_block_estimate_recovers_truth():
    # n=1000, within 0.6 / between 0.2: the entrywise sd is at most 0.0013, so 0.01 is > 7 sd
    B = planted_block_matrix(2, 0.6, 0.2)
    bad = 0
    for seed in range(100):
        g = sample_labels(1000, 2, seed)
        a = sample_sbm(SbmParams(g, B), seed + 10_000)
        if np.abs(estimate_block_matrix(a, g, 2) - B).max() > 0.01:
            bad += 1
    assert bad <= 1


def test_sparsity_family():
    np.testing.assert_allclose(sparsity_block_matrix(2, 0.1), [[0.7, 0.3], [0.3, 0.7]])
    with pytest.raises(SbmError):
        sparsity_block_matrix(2, 0.2)


def test_sample_labels_min_size():
    g = sample_labels(12, 5, seed=3)
    assert np.bincount(g, minlength=6)[1:].min() >= 2
    with pytest.raises(SbmError):
        sample_labels(5, 3, seed=0)


def test_balanced_labels():
    g = balanced_labels(10, 3)
    assert list(np.bincount(g)[1:]) == [4, 3, 3]


def test_csv_round_trip(tmp_path):
    B = np.array([[0.7, 0.123456789012345], [0.123456789012345, 0.25]])
    write_block_matrix(B, tmp_path / "b.csv")
    np.testing.assert_array_equal(read_block_matrix(tmp_path / "b.csv"), B)
    first = (tmp_path / "b.csv").read_text().splitlines()[0]
    assert len(first.split(",")) == 2
    g = np.array([1, 2, 2, 1, 3])
    write_labels(g, tmp_path / "g.csv")
    assert (tmp_path / "g.csv").read_text() == "1\n2\n2\n1\n3\n"
    np.testing.assert_array_equal(read_labels(tmp_path / "g.csv"), g)
