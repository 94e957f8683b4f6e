"""Goodness-of-fit test for the number of SBM communities.

The adjacency matrix is centered by the edge probabilities and rescaled so
that every off-diagonal entry has variance ``1/n``. Under a correctly
specified model the result behaves like a Wigner matrix, and
``trace(M^3) / sqrt(6)`` is asymptotically standard normal. Under-fitting
leaves block structure in the residual, which inflates the cubic trace.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field

import numpy as np
from scipy import special

from .netgraph import Graph
from .sbm import (
    InfeasibleCommunityError,
    SbmParams,
    build_edge_probabilities,
    estimate_block_matrix,
)
from .seeding import derive_seed
from .spectral import kmeans, spectral_clustering, symmetric_eigen

DEFAULT_ALPHA = 0.05
ORACLE = "oracle"
PLUGIN = "plugin"
SQRT6 = math.sqrt(6.0)


class InfeasibleKError(ValueError):
    """The fitted partition for ``k0`` has an empty or singleton community."""

    def __init__(self, k0: int, cause: InfeasibleCommunityError):
        self.k0 = k0
        self.cause = cause
        super().__init__(f"k0={k0} infeasible for this graph: {cause}")


class KAboveRootNWarning(UserWarning):
    pass


@dataclass(frozen=True, eq=False)
class CenteredMatrix:
    m: np.ndarray
    kind: str = ORACLE

    @property
    def n(self) -> int:
        return self.m.shape[0]


def center_rescale(a: Graph, p, kind: str = ORACLE) -> CenteredMatrix:
    """``(A_ij - P_ij) / sqrt(n P_ij (1 - P_ij))`` off the diagonal, zero on it."""
    if kind not in (ORACLE, PLUGIN):
        raise ValueError(f"kind must be {ORACLE!r} or {PLUGIN!r}")
    p = np.asarray(p, dtype=float)
    n = a.n
    if p.shape != (n, n):
        raise ValueError(f"P has shape {p.shape}, graph has {n} nodes")
    off = ~np.eye(n, dtype=bool)
    if not np.all((p[off] > 0) & (p[off] < 1)):
        raise ValueError("edge probabilities must lie strictly inside (0, 1)")
    q = np.where(off, p, 0.5)
    m = (a.adjacency - q) / np.sqrt(n * q * (1.0 - q))
    np.fill_diagonal(m, 0.0)
    return CenteredMatrix(m, kind)


def _matrix(c) -> np.ndarray:
    m = c.m if isinstance(c, CenteredMatrix) else np.asarray(c, dtype=float)
    if not np.all(np.isfinite(m)):
        raise ValueError("centered matrix has non-finite entries")
    return m


def lss_statistic(c) -> float:
    """``trace(M^3) / sqrt(6)`` as the elementwise contraction of ``M @ M`` with ``M``."""
    m = _matrix(c)
    return float(np.einsum("ij,ij->", m @ m, m) / SQRT6)


def lss_statistic_eigen(c) -> float:
    """Same statistic from the eigenvalues, ``sum(lambda^3) / sqrt(6)``."""
    values = symmetric_eigen(_matrix(c)).values
    return float(np.sum(values**3) / SQRT6)


def std_normal_cdf(x: float) -> float:
    return float(special.ndtr(x))


def std_normal_quantile(p: float) -> float:
    if not 0.0 < p < 1.0:
        raise ValueError(f"quantile level must lie strictly inside (0, 1), got {p}")
    return float(special.ndtri(p))


def two_sided_p_value(statistic: float) -> float:
    # 2 * (1 - Phi(|t|)), written through the lower tail to keep precision for large |t|
    return float(min(1.0, 2.0 * special.ndtr(-abs(statistic))))


def critical_value(alpha: float) -> float:
    if not 0.0 < alpha < 1.0:
        raise ValueError(f"alpha must lie strictly inside (0, 1), got {alpha}")
    return std_normal_quantile(1.0 - alpha / 2.0)


ROW_FIELDS = ("k0", "statistic", "p_value", "reject")


def format_row(k0, statistic, p_value, reject) -> dict:
    """CSV row: statistics to 6 significant digits, p-values to 4."""
    return {
        "k0": k0,
        "statistic": f"{statistic:.6g}",
        "p_value": f"{p_value:.4g}",
        "reject": str(bool(reject)).lower(),
    }


@dataclass(frozen=True, eq=False)
class TestResult:
    k0: int
    statistic: float
    p_value: float
    reject: bool
    alpha: float
    labels: np.ndarray
    b_hat: np.ndarray
    kind: str = PLUGIN

    __test__ = False  # keep pytest from collecting this class

    def row(self) -> dict:
        return format_row(self.k0, self.statistic, self.p_value, self.reject)


def _decide(k0, statistic, alpha, labels, b_hat, kind) -> TestResult:
    return TestResult(
        k0=k0,
        statistic=statistic,
        p_value=two_sided_p_value(statistic),
        reject=bool(abs(statistic) >= critical_value(alpha)),
        alpha=alpha,
        labels=labels,
        b_hat=b_hat,
        kind=kind,
    )


def gof_test_oracle(a: Graph, params: SbmParams, alpha: float = DEFAULT_ALPHA) -> TestResult:
    """Test with the true edge probabilities known."""
    if params.n != a.n:
        raise ValueError(f"parameters describe {params.n} nodes, graph has {a.n}")
    p = build_edge_probabilities(params.labels, params.B)
    t = lss_statistic(center_rescale(a, p, ORACLE))
    return _decide(params.k, t, alpha, params.labels, params.B, ORACLE)


def fit_labels(a: Graph, k0: int, seed, embedding=None) -> np.ndarray:
    if embedding is None:
        return spectral_clustering(a, k0, seed).labels
    return kmeans(embedding[:, :k0], k0, seed).labels


def gof_test(
    a: Graph,
    k0: int,
    alpha: float = DEFAULT_ALPHA,
    seed=0,
    labels=None,
    embedding=None,
) -> TestResult:
    """Plug-in test of ``H0: K = k0`` against ``K > k0``.

    Labels come from adjacency spectral clustering unless supplied. Passing
    ``embedding`` (eigenvectors ordered by decreasing ``|eigenvalue|``, at
    least ``k0`` columns) skips the eigensolve.
    """
    if not 1 <= k0 <= a.n:
        raise ValueError(f"k0 must be in 1..{a.n}, got {k0}")
    if k0 >= math.sqrt(a.n):
        warnings.warn(f"k0={k0} is not small relative to sqrt(n)={math.sqrt(a.n):.1f}", KAboveRootNWarning, stacklevel=2)
    g_hat = fit_labels(a, k0, seed, embedding) if labels is None else np.asarray(labels)
    try:
        b_hat = estimate_block_matrix(a, g_hat, k0)
    except InfeasibleCommunityError as exc:
        raise InfeasibleKError(k0, exc) from exc
    p_hat = build_edge_probabilities(g_hat, b_hat)
    t = lss_statistic(center_rescale(a, p_hat, PLUGIN))
    return _decide(k0, t, alpha, g_hat, b_hat, PLUGIN)


@dataclass(frozen=True)
class TrailStep:
    k0: int
    statistic: float
    p_value: float
    reject: bool

    def row(self) -> dict:
        return format_row(self.k0, self.statistic, self.p_value, self.reject)


FOUND = "found"
CAPPED = "not found below cap"


@dataclass(frozen=True)
class KEstimate:
    k_hat: int | None
    trail: tuple[TrailStep, ...]
    k_max: int
    status: str = FOUND
    diagnostic: str = ""
    infeasible_k0: int | None = None
    results: tuple[TestResult, ...] = field(default=(), repr=False, compare=False)

    @property
    def found(self) -> bool:
        return self.k_hat is not None


def default_k_max(n: int) -> int:
    return max(1, min(math.isqrt(n), 25))


def estimate_k(a: Graph, alpha: float = DEFAULT_ALPHA, k_max: int | None = None, seed=0) -> KEstimate:
    """Sequential testing: the first ``k0 = 1, 2, ...`` that is not rejected.

    Step ``k0`` clusters with seed ``derive_seed(seed, k0)``. If every
    ``k0 <= k_max`` is rejected, or a fitted partition degenerates, no
    estimate is returned and the trail records how far the search got.
    """
    k_max = default_k_max(a.n) if k_max is None else int(k_max)
    if k_max < 1:
        raise ValueError(f"k_max must be >= 1, got {k_max}")
    k_max = min(k_max, a.n)
    embedding = symmetric_eigen(a.adjacency.astype(float)).vectors[:, :k_max]
    trail, results = [], []
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", KAboveRootNWarning)
        for k0 in range(1, k_max + 1):
            try:
                res = gof_test(a, k0, alpha, derive_seed(seed, k0), embedding=embedding)
            except InfeasibleKError as exc:
                return KEstimate(None, tuple(trail), k_max, CAPPED, str(exc), k0, tuple(results))
            trail.append(TrailStep(k0, res.statistic, res.p_value, res.reject))
            results.append(res)
            if not res.reject:
                return KEstimate(k0, tuple(trail), k_max, FOUND, "", None, tuple(results))
    return KEstimate(None, tuple(trail), k_max, CAPPED, f"every k0 <= {k_max} rejected", None, tuple(results))

