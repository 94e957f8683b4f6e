"""Rejection rates at n=1000, B = 0.6/0.2: size (K = K0) and power (K = K0 + 1)."""

import argparse

from sbm_gof.experiments import BlockSpec, McConfig, run_size_power_experiment


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n", type=int, default=1000)
    ap.add_argument("--trials", type=int, default=200)
    ap.add_argument("--k0", type=int, nargs="+", default=[2, 3, 4])
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--workers", type=int, default=1)
    args = ap.parse_args()

    print("k0,k_true,rate,ci_low,ci_high,seconds")
    for k0 in args.k0:
        for k_true in (k0, k0 + 1):
            cfg = McConfig(
                n=args.n, k_true=k_true, block_spec=BlockSpec(within=0.6, between=0.2),
                n_trials=args.trials, base_seed=args.seed, workers=args.workers,
            )
            rep = run_size_power_experiment(cfg, k0)
            print(f"{k0},{k_true},{rep.rate:.3f},{rep.ci[0]:.3f},{rep.ci[1]:.3f},{rep.wall_time:.1f}", flush=True)


if __name__ == "__main__":
    main()
