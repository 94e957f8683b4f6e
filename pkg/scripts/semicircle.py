"""KS distance between the ESD of a centered single-community matrix and the semicircle law."""

import argparse

import numpy as np

from sbm_gof.experiments import esd_ks_distance, null_centered_matrix


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n", type=int, nargs="+", default=[200, 500, 1000, 2000])
    ap.add_argument("--p", type=float, default=0.5)
    ap.add_argument("--seeds", type=int, default=20)
    args = ap.parse_args()

    print("n,median_ks,max_ks")
    for n in args.n:
        d = [esd_ks_distance(null_centered_matrix(n, args.p, s)) for s in range(args.seeds)]
        print(f"{n},{np.median(d):.5f},{np.max(d):.5f}", flush=True)


if __name__ == "__main__":
    main()
