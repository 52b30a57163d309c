#!/usr/bin/env python3
"""Map the adjoint-equation residual of the two-interval Green function.

Evaluates the finite-difference residual on a (sigma, eta/epsilon) grid in the
homogeneous region and reports the worst relative value.

    python scripts/adjoint_residual_grid.py --kappa 6 --legs 2 --out /tmp/adjoint.csv
"""

import argparse
import csv

import numpy as np

from nullstate import TwoIntervalGreen, leg_weight


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--kappa", type=float, default=6.0)
    ap.add_argument("--legs", type=int, default=2, help="anomalous weight is theta_<legs>")
    ap.add_argument("--rho", type=float, default=0.4)
    ap.add_argument("--epsilon", type=float, default=0.5)
    ap.add_argument("--n-sigma", type=int, default=13)
    ap.add_argument("--n-eta", type=int, default=7)
    ap.add_argument("--out", default=None)
    args = ap.parse_args()

    g = TwoIntervalGreen(h=leg_weight(args.legs, args.kappa), kappa=args.kappa)
    rows = []
    worst = (0.0, None)
    for sigma in np.linspace(0.1, 0.9, args.n_sigma):
        for ratio in np.geomspace(1.3, 5.0, args.n_eta):
            eta = args.epsilon * float(ratio)
            rep = g.adjoint_residual(args.rho, args.epsilon, float(sigma), eta)
            rows.append((args.rho, args.epsilon, float(sigma), eta, rep.residual, rep.scale))
            if rep.relative > worst[0]:
                worst = (rep.relative, (float(sigma), eta))
    print(f"worst relative residual {worst[0]:.3e} at (sigma, eta) = {worst[1]}")
    if args.out:
        with open(args.out, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(("rho", "epsilon", "sigma", "eta", "residual", "scale"))
            w.writerows(rows)
        print(f"wrote {args.out}")


if __name__ == "__main__":
    main()
