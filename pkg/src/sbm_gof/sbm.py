"""Stochastic block model parameters, sampling and the plug-in block estimator.

Labels are 1-based throughout the public API (values in ``1..K``), matching
the CSV format.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .netgraph import Graph
from .seeding import make_rng


class SbmError(ValueError):
    pass


class InfeasibleCommunityError(SbmError):
    """A fitted community is empty or a singleton, so its density is undefined."""

    def __init__(self, community: int, size: int):
        self.community = community
        self.size = size
        super().__init__(f"community {community} has {size} member(s); at least 2 are required")


class BalanceWarning(UserWarning):
    pass


DEFAULT_C0 = 0.3


def check_labels(labels, k: int | None = None) -> np.ndarray:
    g = np.asarray(labels)
    if g.ndim != 1 or g.size == 0:
        raise SbmError("labels must be a non-empty 1-D vector")
    if not np.issubdtype(g.dtype, np.integer):
        if not np.all(np.mod(g, 1) == 0):
            raise SbmError("labels must be integers")
        g = g.astype(np.int64)
    k = int(g.max()) if k is None else k
    if g.min() < 1 or g.max() > k:
        raise SbmError(f"labels must lie in 1..{k}")
    return g.astype(np.int64)


def check_block_matrix(b, *, open_interval=True) -> np.ndarray:
    b = np.atleast_2d(np.asarray(b, dtype=float))
    if b.ndim != 2 or b.shape[0] != b.shape[1]:
        raise SbmError(f"block matrix must be square, got shape {b.shape}")
    if not np.all(np.isfinite(b)):
        raise SbmError("block matrix has non-finite entries")
    if not np.allclose(b, b.T, rtol=0, atol=1e-12):
        raise SbmError("block matrix must be symmetric")
    if open_interval and not np.all((b > 0) & (b < 1)):
        raise SbmError("block probabilities must lie strictly inside (0, 1)")
    return b


@dataclass(frozen=True, eq=False)
class SbmParams:
    labels: np.ndarray
    B: np.ndarray

    def __post_init__(self):
        b = check_block_matrix(self.B)
        g = check_labels(self.labels, b.shape[0])
        missing = set(range(1, b.shape[0] + 1)) - set(np.unique(g).tolist())
        if missing:
            raise SbmError(f"communities {sorted(missing)} have no members")
        object.__setattr__(self, "B", b)
        object.__setattr__(self, "labels", g)

    @property
    def n(self) -> int:
        return self.labels.size

    @property
    def k(self) -> int:
        return self.B.shape[0]

    def sizes(self) -> np.ndarray:
        return community_sizes(self.labels, self.k)

    def is_balanced(self, c0: float = DEFAULT_C0) -> bool:
        """Whether the smallest community holds at least ``c0 * n / K`` nodes."""
        return bool(self.sizes().min() >= c0 * self.n / self.k)


def community_sizes(labels, k: int) -> np.ndarray:
    return np.bincount(np.asarray(labels) - 1, minlength=k)[:k]


def build_edge_probabilities(labels, B) -> np.ndarray:
    """``P[i, j] = B[g_i, g_j]``, diagonal included."""
    b = check_block_matrix(B, open_interval=False)
    g = check_labels(labels, b.shape[0]) - 1
    return b[np.ix_(g, g)]


def sample_adjacency(P, seed) -> Graph:
    """Independent Bernoulli(P_ij) edges for i < j; symmetric, empty diagonal."""
    P = np.asarray(P, dtype=float)
    n = P.shape[0]
    u = make_rng(seed).random((n, n))
    upper = np.triu(u < P, 1)
    return Graph(upper | upper.T)


def sample_sbm(params: SbmParams, seed) -> Graph:
    return sample_adjacency(build_edge_probabilities(params.labels, params.B), seed)


def estimate_block_matrix(a: Graph, labels, k0: int, c0: float = DEFAULT_C0) -> np.ndarray:
    """Block densities of ``a`` under the partition ``labels``.

    Diagonal entries are within-community edge densities over
    ``n_k (n_k - 1) / 2`` pairs; off-diagonal entries are between-community
    densities over ``n_k n_l`` pairs. Entries are clamped to
    ``[1/n^2, 1 - 1/n^2]`` so the rescaling downstream stays finite.
    """
    if k0 < 1:
        raise SbmError(f"k0 must be >= 1, got {k0}")
    g = check_labels(labels, k0)
    n = a.n
    if g.size != n:
        raise SbmError(f"{g.size} labels for a graph with {n} nodes")
    sizes = community_sizes(g, k0)
    for k, nk in enumerate(sizes, start=1):
        if nk < 2:
            raise InfeasibleCommunityError(k, int(nk))
    if sizes.min() < c0 * n / k0:
        warnings.warn(
            f"smallest community has {sizes.min()} nodes, below {c0} * n / K = {c0 * n / k0:.1f}",
            BalanceWarning,
            stacklevel=2,
        )
    z = np.zeros((n, k0))
    z[np.arange(n), g - 1] = 1.0
    edge_counts = z.T @ (a.adjacency @ z)
    pairs = np.outer(sizes, sizes).astype(float)
    np.fill_diagonal(pairs, sizes * (sizes - 1))
    b_hat = edge_counts / pairs
    eps = 1.0 / n**2
    return np.clip(b_hat, eps, 1.0 - eps)


def planted_block_matrix(k: int, within: float, between: float) -> np.ndarray:
    return np.full((k, k), between) + (within - between) * np.eye(k)


def sparsity_block_matrix(k: int, r: float) -> np.ndarray:
    """``B_kl = r (3 + 4 * 1{k == l})``; rejects ``r`` that pushes an entry to 1 or beyond."""
    b = r * (3.0 + 4.0 * np.eye(k))
    if not np.all((b > 0) & (b < 1)):
        raise SbmError(f"r={r} gives block probabilities outside (0, 1)")
    return b


def balanced_labels(n: int, k: int) -> np.ndarray:
    """Contiguous blocks with sizes differing by at most one."""
    return np.repeat(np.arange(1, k + 1), community_sizes_balanced(n, k))


def community_sizes_balanced(n: int, k: int) -> np.ndarray:
    base, extra = divmod(n, k)
    return np.array([base + (i < extra) for i in range(k)])


def sample_labels(n: int, k: int, seed, min_size: int = 2, max_tries: int = 10_000) -> np.ndarray:
    """Uniform i.i.d. labels, redrawn until every community has ``min_size`` members."""
    if k * min_size > n:
        raise SbmError(f"cannot place {k} communities of size >= {min_size} on {n} nodes")
    rng = make_rng(seed)
    for _ in range(max_tries):
        g = rng.integers(1, k + 1, size=n)
        if community_sizes(g, k).min() >= min_size:
            return g
    raise SbmError("label resampling did not produce large enough communities")


def write_block_matrix(b, path) -> None:
    np.savetxt(path, np.asarray(b), delimiter=",", fmt="%.17g")


def read_block_matrix(path) -> np.ndarray:
    return check_block_matrix(np.loadtxt(path, delimiter=",", ndmin=2), open_interval=False)


def write_labels(labels, path) -> None:
    np.savetxt(path, np.asarray(labels, dtype=np.int64), fmt="%d")


def read_labels(path) -> np.ndarray:
    return check_labels(np.loadtxt(path, dtype=np.int64, ndmin=1))
