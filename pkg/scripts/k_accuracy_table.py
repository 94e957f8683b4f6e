"""Accuracy of sequential K estimation over a (K, r) grid, B = r(3 + 4I), n=1000."""

import argparse

from sbm_gof.experiments import BlockSpec, McConfig, run_k_accuracy_experiment


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n", type=int, default=1000)
    ap.add_argument("--trials", type=int, default=200)
    ap.add_argument("--k", type=int, nargs="+", default=[2, 3, 4, 5])
    ap.add_argument("--r", type=float, nargs="+", default=[0.01, 0.05, 0.1])
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--workers", type=int, default=1)
    args = ap.parse_args()

    print("k_true,r,accuracy,mean_k_hat,seconds")
    for k in args.k:
        for r in args.r:
            cfg = McConfig(
                n=args.n, k_true=k, block_spec=BlockSpec(r=r), n_trials=args.trials,
                base_seed=args.seed, workers=args.workers,
            )
            rep = run_k_accuracy_experiment(cfg)
            found = [rec["k_hat"] for rec in rep.records if rec["k_hat"] is not None]
            mean_k = sum(found) / len(found) if found else float("nan")
            print(f"{k},{r},{rep.rate:.3f},{mean_k:.2f},{rep.wall_time:.1f}", flush=True)


if __name__ == "__main__":
    main()
