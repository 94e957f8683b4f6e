"""Command-line entry point.

Exit codes: 0 success, 1 I/O or validation error, 2 infeasible community count.
"""

from __future__ import annotations

import argparse
import csv
import sys
import warnings

from . import gof
from .experiments import (
    BALANCED,
    MULTINOMIAL,
    BlockSpec,
    McConfig,
    run_k_accuracy_experiment,
    run_null_experiment,
    run_size_power_experiment,
)
from .netgraph import GraphError, degree_histogram, largest_connected_component, read_edge_list
from .sbm import BalanceWarning, SbmError, write_block_matrix, write_labels

EXIT_OK, EXIT_ERROR, EXIT_INFEASIBLE = 0, 1, 2


def _writer(fh):
    return csv.writer(fh, lineterminator="\n")


def _load(path, lcc: bool):
    g = read_edge_list(path)
    return largest_connected_component(g) if lcc else g


def cmd_test(args) -> int:
    g = _load(args.input, args.lcc)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", BalanceWarning)
        res = gof.gof_test(g, args.k, args.alpha, args.seed)
    w = _writer(sys.stdout)
    w.writerow(gof.ROW_FIELDS)
    w.writerow(res.row().values())
    if args.labels_out:
        write_labels(res.labels, args.labels_out)
    if args.b_out:
        write_block_matrix(res.b_hat, args.b_out)
    return EXIT_OK


def cmd_estimate_k(args) -> int:
    g = _load(args.input, args.lcc)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", BalanceWarning)
        est = gof.estimate_k(g, args.alpha, args.k_max, args.seed)
    w = _writer(sys.stdout)
    w.writerow(gof.ROW_FIELDS)
    for step in est.trail:
        w.writerow(step.row().values())
    if est.found:
        print(f"k_hat={est.k_hat}", file=sys.stderr)
        return EXIT_OK
    print(f"k_hat: {est.status} (k_max={est.k_max}); {est.diagnostic}", file=sys.stderr)
    return EXIT_INFEASIBLE if est.infeasible_k0 is not None else EXIT_OK


def _summary(report, **fields):
    w = _writer(sys.stdout)
    row = dict(fields)
    row.update(
        trials=report.n_trials,
        rate=f"{report.rate:.4g}",
        ci_low=f"{report.ci[0]:.4g}",
        ci_high=f"{report.ci[1]:.4g}",
        wall_time=f"{report.wall_time:.3g}",
    )
    w.writerow(row.keys())
    w.writerow(row.values())


def cmd_sim_null(args) -> int:
    cfg = McConfig(
        n=args.n,
        k_true=args.k,
        block_spec=BlockSpec(within=args.b_within, between=args.b_between),
        n_trials=args.trials,
        alpha=args.alpha,
        base_seed=args.seed,
        label_rule=BALANCED if args.balanced else MULTINOMIAL,
        workers=args.workers,
    )
    report = run_null_experiment(cfg, args.mode)
    if args.out:
        with open(args.out, "w", newline="", encoding="utf-8") as fh:
            w = _writer(fh)
            w.writerow(["statistic"])
            w.writerows([[repr(float(x))] for x in report.extra["samples"]])
    ex = report.extra
    _summary(
        report,
        mode=args.mode,
        mean=f"{ex['mean']:.4g}",
        variance=f"{ex['variance']:.4g}",
        skewness=f"{ex['skewness']:.4g}",
        ks_distance=f"{ex['ks_distance']:.4g}",
    )
    return EXIT_OK


def _records_out(report, path):
    if not path:
        return
    keys = list(report.records[0])
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.DictWriter(fh, keys, lineterminator="\n")
        w.writeheader()
        w.writerows(report.records)


def cmd_sim_size_power(args) -> int:
    cfg = McConfig(
        n=args.n,
        k_true=args.k_true,
        block_spec=BlockSpec(within=args.b_within, between=args.b_between),
        n_trials=args.trials,
        alpha=args.alpha,
        base_seed=args.seed,
        workers=args.workers,
    )
    report = run_size_power_experiment(cfg, args.k0)
    _records_out(report, args.out)
    _summary(report, k_true=args.k_true, k0=args.k0)
    return EXIT_OK


def cmd_sim_accuracy(args) -> int:
    cfg = McConfig(
        n=args.n,
        k_true=args.k_true,
        block_spec=BlockSpec(r=args.r),
        n_trials=args.trials,
        alpha=args.alpha,
        base_seed=args.seed,
        workers=args.workers,
    )
    report = run_k_accuracy_experiment(cfg, args.k_max)
    _records_out(report, args.out)
    _summary(report, k_true=args.k_true, r=args.r)
    return EXIT_OK


def cmd_degrees(args) -> int:
    degree_histogram(_load(args.input, args.lcc)).to_csv(sys.stdout)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="sbm-gof", description="Spectral goodness-of-fit test for stochastic block models.")
    sub = p.add_subparsers(dest="command", required=True)

    t = sub.add_parser("test", help="test H0: K = k0 on an edge list")
    t.add_argument("--input", required=True)
    t.add_argument("--k", type=int, required=True)
    t.add_argument("--alpha", type=float, default=gof.DEFAULT_ALPHA)
    t.add_argument("--seed", type=int, default=0)
    t.add_argument("--lcc", action="store_true", help="restrict to the largest connected component")
    t.add_argument("--labels-out")
    t.add_argument("--b-out")
    t.set_defaults(func=cmd_test)

    e = sub.add_parser("estimate-k", help="sequentially estimate the number of communities")
    e.add_argument("--input", required=True)
    e.add_argument("--alpha", type=float, default=gof.DEFAULT_ALPHA)
    e.add_argument("--k-max", type=int, default=None)
    e.add_argument("--seed", type=int, default=0)
    e.add_argument("--lcc", action="store_true")
    e.set_defaults(func=cmd_estimate_k)

    s = sub.add_parser("simulate", help="Monte Carlo experiments")
    ssub = s.add_subparsers(dest="experiment", required=True)

    def common(sp, trials):
        sp.add_argument("--n", type=int, default=1000)
        sp.add_argument("--trials", type=int, default=trials)
        sp.add_argument("--alpha", type=float, default=gof.DEFAULT_ALPHA)
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--workers", type=int, default=1)
        sp.add_argument("--out")

    n = ssub.add_parser("null", help="statistic samples under H0")
    common(n, 1000)
    n.set_defaults(n=50)
    n.add_argument("--k", type=int, default=2)
    n.add_argument("--b-within", type=float, default=0.7)
    n.add_argument("--b-between", type=float, default=0.3)
    n.add_argument("--mode", choices=[gof.ORACLE, gof.PLUGIN], default=gof.PLUGIN)
    n.add_argument("--balanced", action=argparse.BooleanOptionalAction, default=True,
                   help="equal-sized communities (default) instead of i.i.d. labels")
    n.set_defaults(func=cmd_sim_null)

    sp = ssub.add_parser("size-power", help="rejection rate of H0: K = k0")
    common(sp, 200)
    sp.add_argument("--k-true", type=int, required=True)
    sp.add_argument("--k0", type=int, required=True)
    sp.add_argument("--b-within", type=float, default=0.6)
    sp.add_argument("--b-between", type=float, default=0.2)
    sp.set_defaults(func=cmd_sim_size_power)

    acc = ssub.add_parser("accuracy", help="accuracy of sequential K estimation")
    common(acc, 200)
    acc.add_argument("--k-true", type=int, required=True)
    acc.add_argument("--r", type=float, required=True)
    acc.add_argument("--k-max", type=int, default=None)
    acc.set_defaults(func=cmd_sim_accuracy)

    i = sub.add_parser("inspect", help="descriptive summaries")
    isub = i.add_subparsers(dest="what", required=True)
    d = isub.add_parser("degrees", help="degree histogram as CSV")
    d.add_argument("--input", required=True)
    d.add_argument("--lcc", action="store_true")
    d.set_defaults(func=cmd_degrees)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except gof.InfeasibleKError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except (OSError, GraphError, SbmError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
