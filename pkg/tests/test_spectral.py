import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sbm_gof.sbm import SbmParams, balanced_labels, planted_block_matrix, sample_sbm
from sbm_gof.spectral import (
    canonical_labels,
    kmeans,
    leading_eigenpairs,
    spectral_clustering,
    symmetric_eigen,
)


def random_symmetric(n, seed):
    x = np.random.default_rng(seed).standard_normal((n, n))
    return (x + x.T) / 2


def test_eigen_identity():
    np.testing.assert_allclose(symmetric_eigen(np.eye(3)).values, [1, 1, 1])


def test_eigen_triangle():
    e = symmetric_eigen(np.ones((3, 3)) - np.eye(3))
    np.testing.assert_allclose(e.values, [2, -1, -1], atol=1e-12)


def test_eigen_trace_and_frobenius():
    m = random_symmetric(10, 0)
    e = symmetric_eigen(m)
    assert abs(e.values.sum() - np.trace(m)) <= 1e-8
    assert abs((e.values**2).sum() - (m**2).sum()) <= 1e-8


def test_eigen_sorted_by_magnitude():
    e = symmetric_eigen(np.diag([1.0, -5.0, 3.0, 0.5]))
    np.testing.assert_allclose(e.values, [-5, 3, 1, 0.5])


def test_eigen_rejects_bad_input():
    with pytest.raises(ValueError, match="symmetric"):
        symmetric_eigen([[0.0, 1.0], [0.0, 0.0]])
    with pytest.raises(ValueError, match="non-finite"):
        symmetric_eigen([[np.nan, 0.0], [0.0, 1.0]])


@given(st.integers(1, 200), st.integers(0, 2**32 - 1))
@settings(max_examples=25, deadline=None)
def test_eigen_reconstruction_and_orthonormality(n, seed):
    m = random_symmetric(n, seed)
    e = symmetric_eigen(m)
    fro = np.linalg.norm(m)
    recon = e.vectors @ np.diag(e.values) @ e.vectors.T
    assert np.linalg.norm(recon - m) <= 1e-6 * fro
    np.testing.assert_allclose(e.vectors.T @ e.vectors, np.eye(n), atol=1e-8)
    resid = np.linalg.norm(m @ e.vectors - e.vectors * e.values, axis=0)
    assert resid.max() <= 1e-8 * fro


@pytest.mark.parametrize("n, k", [(80, 3), (300, 5), (300, 1)])
def test_leading_eigenpairs_match_full(n, k):
    m = random_symmetric(n, n + k)
    full = symmetric_eigen(m)
    part = leading_eigenpairs(m, k)
    np.testing.assert_allclose(part.values, full.values[:k], atol=1e-10)
    # columns agree up to sign
    dots = np.abs(np.sum(part.vectors * full.vectors[:, :k], axis=0))
    np.testing.assert_allclose(dots, 1.0, atol=1e-8)


def blobs(seed, n_per=30):
    rng = np.random.default_rng(seed)
    a = rng.uniform(-0.1, 0.1, size=(n_per, 2))
    b = rng.uniform(-0.1, 0.1, size=(n_per, 2)) + [10.0, 0.0]
    return np.vstack([a, b])


@pytest.mark.parametrize("seed", range(5))
def test_kmeans_separated_blobs(seed):
    res = kmeans(blobs(seed), 2, seed)
    assert list(res.labels) == [1] * 30 + [2] * 30


def test_kmeans_single_cluster():
    x = blobs(1)
    res = kmeans(x, 1, 0)
    assert set(res.labels) == {1}
    assert res.inertia == pytest.approx(((x - x.mean(axis=0)) ** 2).sum())


def test_kmeans_k_equals_n():
    x = np.random.default_rng(2).standard_normal((7, 3))
    res = kmeans(x, 7, 0)
    assert sorted(res.labels) == list(range(1, 8))
    assert res.inertia == pytest.approx(0.0, abs=1e-12)


def test_kmeans_errors():
    with pytest.raises(ValueError):
        kmeans(np.zeros((3, 2)), 4, 0)
    with pytest.raises(ValueError, match="non-finite"):
        kmeans(np.array([[np.inf, 0.0], [0.0, 0.0]]), 1, 0)


def test_kmeans_duplicate_points_fill_every_cluster():
    x = np.zeros((6, 2))
    x[3:] = 1.0
    res = kmeans(x, 3, 0)
    assert sorted(set(res.labels)) == [1, 2, 3]


def test_canonical_labels():
    assert list(canonical_labels([2, 2, 0, 1, 0])) == [1, 1, 2, 3, 2]


@given(st.integers(0, 2**32 - 1), st.integers(1, 5))
@settings(max_examples=25, deadline=None)
def test_kmeans_properties(seed, k):
    x = np.random.default_rng(seed).standard_normal((40, 3))
    res = kmeans(x, k, seed)
    assert sorted(set(res.labels)) == list(range(1, k + 1))
    assert res.labels[0] == 1
    hist = np.array(res.history)
    assert np.all(np.diff(hist) <= 1e-9 * max(1.0, hist[0]))
    # restarts 0..r-1 are a prefix of the full run, so more restarts never do worse
    for r in (1, 3):
        assert res.inertia <= kmeans(x, k, seed, n_restarts=r).inertia + 1e-9


def test_spectral_two_cliques(two_cliques):
    res = spectral_clustering(two_cliques, 2, 0)
    assert list(res.labels) == [1] * 10 + [2] * 10


def test_spectral_single_community(two_cliques):
    assert set(spectral_clustering(two_cliques, 1, 0).labels) == {1}


def test_spectral_k_too_large(triangle):
    with pytest.raises(ValueError):
        spectral_clustering(triangle, 4, 0)


def misclustering(labels, truth):
    # two communities: best of the identity and the swap
    agree = np.mean(labels == truth)
    return min(1 - agree, agree)


def test_spectral_recovers_planted_partition():
    truth = balanced_labels(50, 2)
    params = SbmParams(truth, planted_block_matrix(2, 0.7, 0.3))
    rates = [misclustering(spectral_clustering(sample_sbm(params, s), 2, s).labels, truth) for s in range(100)]
    assert np.mean(rates) <= 0.05


@pytest.mark.parametrize("seed", range(5))
def test_spectral_node_permutation(seed):
    truth = balanced_labels(60, 3)
    a = sample_sbm(SbmParams(truth, planted_block_matrix(3, 0.8, 0.1)), seed)
    perm = np.random.default_rng(seed).permutation(60)
    base = spectral_clustering(a, 3, seed).labels
    permuted = spectral_clustering(a.permute(perm), 3, seed).labels
    back = np.empty_like(permuted)
    back[perm] = permuted
    np.testing.assert_array_equal(canonical_labels(back), base)
