"""Monte Carlo harness for the null, size/power and K-accuracy experiments,
plus the semicircle diagnostic and real-network reports.

Trial ``t`` of a run with ``base_seed`` draws everything from the child
seed ``derive_seed(base_seed, t)``; workers only change who computes a
trial, never its inputs, and results are folded in trial order.
"""

from __future__ import annotations

import math
import time
import warnings
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np
from scipy import stats

from . import gof
from .netgraph import Graph
from .sbm import (
    BalanceWarning,
    SbmError,
    SbmParams,
    balanced_labels,
    planted_block_matrix,
    sample_labels,
    sample_sbm,
    sparsity_block_matrix,
)
from .seeding import derive_seed
from .spectral import symmetric_eigen

MULTINOMIAL = "multinomial"
BALANCED = "balanced"


@dataclass(frozen=True)
class BlockSpec:
    """Either an explicit ``matrix``, a ``within``/``between`` pair, or the sparsity family ``r``."""

    matrix: tuple[tuple[float, ...], ...] | None = None
    within: float | None = None
    between: float | None = None
    r: float | None = None

    def build(self, k: int) -> np.ndarray:
        if self.matrix is not None:
            b = np.asarray(self.matrix, dtype=float)
            if b.shape != (k, k):
                raise SbmError(f"block matrix is {b.shape}, expected {(k, k)}")
        elif self.r is not None:
            b = sparsity_block_matrix(k, self.r)
        elif self.within is not None and self.between is not None:
            b = planted_block_matrix(k, self.within, self.between)
        else:
            raise SbmError("block spec needs a matrix, within/between, or r")
        if not np.all((b > 0) & (b < 1)):
            raise SbmError("block probabilities must lie strictly inside (0, 1)")
        return b


@dataclass(frozen=True)
class McConfig:
    n: int
    k_true: int
    block_spec: BlockSpec
    n_trials: int = 200
    alpha: float = gof.DEFAULT_ALPHA
    base_seed: int = 0
    label_rule: str = MULTINOMIAL
    workers: int = 1

    def __post_init__(self):
        if self.n_trials < 1:
            raise ValueError("n_trials must be >= 1")
        if self.label_rule not in (MULTINOMIAL, BALANCED):
            raise ValueError(f"unknown label rule {self.label_rule!r}")
        self.block_spec.build(self.k_true)  # validates entries

    def params(self, trial_seed: int) -> SbmParams:
        if self.label_rule == BALANCED:
            labels = balanced_labels(self.n, self.k_true)
        else:
            labels = sample_labels(self.n, self.k_true, derive_seed(trial_seed, 0))
        return SbmParams(labels, self.block_spec.build(self.k_true))


@dataclass(frozen=True)
class McReport:
    records: tuple[dict, ...]
    rate: float
    ci: tuple[float, float]
    wall_time: float
    criterion: str
    extra: dict = field(default_factory=dict)

    @property
    def n_trials(self) -> int:
        return len(self.records)


def binomial_ci(successes: int, trials: int, level: float = 0.95) -> tuple[float, float]:
    ci = stats.binomtest(successes, trials).proportion_ci(confidence_level=level, method="exact")
    return float(ci.low), float(ci.high)


def _run_trials(fn, cfg: McConfig, *args) -> list:
    seeds = [derive_seed(cfg.base_seed, t) for t in range(cfg.n_trials)]
    jobs = [(fn, cfg, s, args) for s in seeds]
    if cfg.workers <= 1:
        return [_call(job) for job in jobs]
    with ProcessPoolExecutor(max_workers=cfg.workers, initializer=_init_worker) as pool:
        return list(pool.map(_call, jobs, chunksize=max(1, len(jobs) // (4 * cfg.workers))))


def _init_worker():
    from threadpoolctl import threadpool_limits

    threadpool_limits(1)


def _call(job):
    fn, cfg, seed, args = job
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", BalanceWarning)
        warnings.simplefilter("ignore", gof.KAboveRootNWarning)
        return fn(cfg, seed, *args)


def _report(records, key, criterion, start, **extra) -> McReport:
    hits = sum(bool(r[key]) for r in records)
    return McReport(
        records=tuple(records),
        rate=hits / len(records),
        ci=binomial_ci(hits, len(records)),
        wall_time=time.perf_counter() - start,
        criterion=criterion,
        extra=extra,
    )


def _null_trial(cfg: McConfig, seed: int, mode: str) -> dict:
    params = cfg.params(seed)
    a = sample_sbm(params, derive_seed(seed, 1))
    if mode == gof.ORACLE:
        res = gof.gof_test_oracle(a, params, cfg.alpha)
    else:
        res = gof.gof_test(a, cfg.k_true, cfg.alpha, derive_seed(seed, 2))
    return {"seed": seed, "statistic": res.statistic, "p_value": res.p_value, "reject": res.reject}


def sample_moments(x) -> dict:
    x = np.asarray(x, dtype=float)
    return {
        "mean": float(x.mean()),
        "variance": float(x.var(ddof=1)) if x.size > 1 else 0.0,
        "skewness": float(stats.skew(x)) if x.size > 2 else 0.0,
        "ks_distance": float(stats.kstest(x, "norm").statistic),
    }


def run_null_experiment(cfg: McConfig, mode: str = gof.PLUGIN) -> McReport:
    """Statistic samples under a correctly specified model.

    ``mode`` is ``"oracle"`` (true probabilities) or ``"plugin"`` (fitted).
    ``extra`` carries the raw samples, moments and the KS distance to N(0, 1).
    """
    if mode not in (gof.ORACLE, gof.PLUGIN):
        raise ValueError(f"mode must be {gof.ORACLE!r} or {gof.PLUGIN!r}")
    start = time.perf_counter()
    records = _run_trials(_null_trial, cfg, mode)
    samples = np.array([r["statistic"] for r in records])
    return _report(records, "reject", "reject", start, samples=samples, mode=mode, **sample_moments(samples))


def _size_power_trial(cfg: McConfig, seed: int, k0: int) -> dict:
    params = cfg.params(seed)
    a = sample_sbm(params, derive_seed(seed, 1))
    try:
        res = gof.gof_test(a, k0, cfg.alpha, derive_seed(seed, 2))
    except gof.InfeasibleKError:
        return {"seed": seed, "statistic": math.nan, "p_value": math.nan, "reject": False, "infeasible": True}
    return {"seed": seed, "statistic": res.statistic, "p_value": res.p_value, "reject": res.reject, "infeasible": False}


def run_size_power_experiment(cfg: McConfig, k0: int) -> McReport:
    """Rejection rate of ``H0: K = k0`` on graphs drawn with ``cfg.k_true`` communities."""
    start = time.perf_counter()
    records = _run_trials(_size_power_trial, cfg, k0)
    return _report(records, "reject", "reject", start, k0=k0)


def _accuracy_trial(cfg: McConfig, seed: int, k_max) -> dict:
    params = cfg.params(seed)
    a = sample_sbm(params, derive_seed(seed, 1))
    est = gof.estimate_k(a, cfg.alpha, k_max, derive_seed(seed, 2))
    return {
        "seed": seed,
        "k_hat": est.k_hat,
        "status": est.status,
        "steps": len(est.trail),
        "correct": est.k_hat == cfg.k_true,
    }


def run_k_accuracy_experiment(cfg: McConfig, k_max: int | None = None) -> McReport:
    """Fraction of trials where sequential testing recovers ``cfg.k_true``."""
    start = time.perf_counter()
    records = _run_trials(_accuracy_trial, cfg, k_max)
    return _report(records, "correct", "correct", start)


def semicircle_cdf(u):
    """CDF of the semicircle law with density ``sqrt(4 - u^2) / (2 pi)`` on [-2, 2]."""
    u = np.clip(np.asarray(u, dtype=float), -2.0, 2.0)
    return 0.5 + u * np.sqrt(4.0 - u * u) / (4.0 * np.pi) + np.arcsin(u / 2.0) / np.pi


def esd_ks_distance(c) -> float:
    """Kolmogorov-Smirnov distance between the spectrum of ``c`` and the semicircle law."""
    m = c.m if isinstance(c, gof.CenteredMatrix) else np.asarray(c, dtype=float)
    lam = np.sort(symmetric_eigen(m).values)
    n = lam.size
    f = semicircle_cdf(lam)
    upper = np.arange(1, n + 1) / n - f
    lower = f - np.arange(n) / n
    return float(max(upper.max(), lower.max()))


def null_centered_matrix(n: int, p: float, seed) -> gof.CenteredMatrix:
    """Centered single-community (Erdos-Renyi) adjacency with known ``p``."""
    params = SbmParams(np.ones(n, dtype=int), [[p]])
    a = sample_sbm(params, seed)
    return gof.center_rescale(a, np.full((n, n), p), gof.ORACLE)


@dataclass(frozen=True)
class RealNetworkRow:
    k: int
    statistic: float
    p_value: float
    reject: bool
    feasible: bool = True
    labels: np.ndarray | None = field(default=None, repr=False, compare=False)


def analyze_real_network(g: Graph, k_list, alpha: float = gof.DEFAULT_ALPHA, seed=0) -> list[RealNetworkRow]:
    """One plug-in test per ``K`` in ``k_list``; ``K`` uses clustering seed ``derive_seed(seed, K)``."""
    rows = []
    for k in k_list:
        try:
            with warnings.catch_warnings():
                warnings.simplefilter("ignore", BalanceWarning)
                res = gof.gof_test(g, int(k), alpha, derive_seed(seed, int(k)))
        except gof.InfeasibleKError:
            rows.append(RealNetworkRow(int(k), math.nan, math.nan, False, feasible=False))
            continue
        rows.append(RealNetworkRow(int(k), res.statistic, res.p_value, res.reject, True, res.labels))
    return rows
