"""Symmetric eigendecomposition, k-means and adjacency spectral clustering."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .netgraph import Graph
from .seeding import make_rng

N_RESTARTS = 10
MAX_ITER = 100


@dataclass(frozen=True, eq=False)
class EigenDecomposition:
    """Eigenpairs ordered by decreasing ``|value|``; ``vectors[:, i]`` pairs with ``values[i]``."""

    values: np.ndarray
    vectors: np.ndarray


@dataclass(frozen=True, eq=False)
class ClusteringResult:
    labels: np.ndarray
    inertia: float
    n_restarts_used: int
    # inertia after each Lloyd step of the winning restart
    history: tuple[float, ...] = ()


def _check_symmetric(m) -> np.ndarray:
    m = np.asarray(m, dtype=float)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise ValueError("matrix has non-finite entries")
    scale = max(np.abs(m).max(initial=0.0), 1.0)
    if np.abs(m - m.T).max(initial=0.0) > 1e-10 * scale:
        raise ValueError("matrix is not symmetric")
    return m


def _by_magnitude(values, vectors):
    # eigh returns ascending values; a stable sort on -|value| keeps that as the tie order
    order = np.argsort(-np.abs(values), kind="stable")
    return values[order], vectors[:, order]


def symmetric_eigen(m) -> EigenDecomposition:
    m = _check_symmetric(m)
    values, vectors = np.linalg.eigh(m)
    return EigenDecomposition(*_by_magnitude(values, vectors))


def leading_eigenpairs(m, k: int) -> EigenDecomposition:
    """The ``k`` eigenpairs of largest magnitude.

    Only the ``k`` largest and ``k`` smallest eigenvalues are computed, since
    the top-magnitude set is always drawn from the two ends of the spectrum.
    """
    m = _check_symmetric(m)
    n = m.shape[0]
    if not 1 <= k <= n:
        raise ValueError(f"k must be in 1..{n}, got {k}")
    if 2 * k >= n or n <= 64:
        full = symmetric_eigen(m)
        return EigenDecomposition(full.values[:k], full.vectors[:, :k])
    lo_vals, lo_vecs = scipy.linalg.eigh(m, subset_by_index=[0, k - 1], driver="evr")
    hi_vals, hi_vecs = scipy.linalg.eigh(m, subset_by_index=[n - k, n - 1], driver="evr")
    values, vectors = _by_magnitude(np.concatenate([lo_vals, hi_vals]), np.hstack([lo_vecs, hi_vecs]))
    return EigenDecomposition(values[:k], vectors[:, :k])


def _sq_dists(x, centers):
    return ((x[:, None, :] - centers[None, :, :]) ** 2).sum(axis=2)


def _kmeanspp_init(x, k, rng):
    n = x.shape[0]
    centers = np.empty((k, x.shape[1]))
    chosen = [int(rng.integers(n))]
    centers[0] = x[chosen[0]]
    d2 = ((x - centers[0]) ** 2).sum(axis=1)
    for c in range(1, k):
        total = d2.sum()
        if total > 0:
            idx = int(rng.choice(n, p=d2 / total))
        else:
            # every point coincides with a center; fall back to an unused index
            free = np.setdiff1d(np.arange(n), chosen)
            idx = int(rng.choice(free))
        chosen.append(idx)
        centers[c] = x[idx]
        d2 = np.minimum(d2, ((x - centers[c]) ** 2).sum(axis=1))
    return centers


def canonical_labels(assign) -> np.ndarray:
    """Renumber clusters 1..K in order of first appearance along the rows."""
    assign = np.asarray(assign)
    _, first = np.unique(assign, return_index=True)
    order = assign[np.sort(first)]
    mapping = {old: new for new, old in enumerate(order.tolist(), start=1)}
    return np.array([mapping[a] for a in assign.tolist()], dtype=np.int64)


def _inertia(x, centers, assign):
    return float(((x - centers[assign]) ** 2).sum())


def _lloyd(x, centers, max_iter):
    n, k = x.shape[0], centers.shape[0]
    rows = np.arange(n)
    assign = None
    history = []
    for _ in range(max_iter):
        d2 = _sq_dists(x, centers)
        new = np.argmin(d2, axis=1)  # ties resolve to the lowest center index
        for c in range(k):
            if np.any(new == c):
                continue
            # empty cluster: move the farthest point that is not alone in its cluster
            sizes = np.bincount(new, minlength=k)
            cost = np.where(sizes[new] > 1, d2[rows, new], -1.0)
            far = int(np.argmax(cost))
            new[far] = c
        if assign is not None and np.array_equal(new, assign):
            break
        assign = new
        for c in range(k):
            centers[c] = x[assign == c].mean(axis=0)
        history.append(_inertia(x, centers, assign))
    return assign, _inertia(x, centers, assign), history


def kmeans(points, k: int, seed, n_restarts: int = N_RESTARTS, max_iter: int = MAX_ITER) -> ClusteringResult:
    """k-means++ seeding, Lloyd iterations, best of ``n_restarts`` by inertia.

    Restart ``r`` draws from the stream ``(seed, r)``.
    """
    x = np.asarray(points, dtype=float)
    if x.ndim == 1:
        x = x[:, None]
    n = x.shape[0]
    if not np.all(np.isfinite(x)):
        raise ValueError("points have non-finite entries")
    if not 1 <= k <= n:
        raise ValueError(f"k must be in 1..{n}, got {k}")
    best = None
    for r in range(n_restarts):
        centers = _kmeanspp_init(x, k, make_rng(seed, r))
        assign, inertia, history = _lloyd(x, centers, max_iter)
        if best is None or inertia < best[1]:
            best = (assign, inertia, history)
    assign, inertia, history = best
    return ClusteringResult(canonical_labels(assign), inertia, n_restarts, tuple(history))


def spectral_embedding(a: Graph, k: int) -> np.ndarray:
    """Rows of the ``k`` adjacency eigenvectors with largest ``|eigenvalue|``."""
    return leading_eigenpairs(a.adjacency.astype(float), k).vectors


def spectral_clustering(a: Graph, k: int, seed) -> ClusteringResult:
    if not 1 <= k <= a.n:
        raise ValueError(f"k must be in 1..{a.n}, got {k}")
    return kmeans(spectral_embedding(a, k), k, seed)
