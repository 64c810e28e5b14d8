#!/usr/bin/env python3
"""Scan the Lyapunov exponent over energy at a given flux and print a small
table, marking which energies the current rational-convergent cover puts on
or off the spectrum.

Example:
    python scripts/lyapunov_scan.py --flux golden --lambdas -6:10:33
"""

import argparse
import sys

import numpy as np

from hexspec.dynamics import CocycleConfig, irrational_cover, lyapunov
from hexspec.flux import parse_flux


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--flux", default="golden")
    ap.add_argument("--lambdas", default="-6:10:33", help="a:b:n grid")
    ap.add_argument("--theta-samples", type=int, default=256)
    ap.add_argument("--max-n", type=int, default=2 ** 14)
    ap.add_argument("--cover-level", type=int, default=8)
    ap.add_argument("--c2", type=float, default=2.0)
    args = ap.parse_args()

    flux = parse_flux(args.flux)
    a, b, n = args.lambdas.split(":")
    lams = np.linspace(float(a), float(b), int(n))
    cfg = CocycleConfig(flux=flux, theta_samples=args.theta_samples,
                        max_n=args.max_n)
    cover = irrational_cover(flux.alpha, args.cover_level, args.c2)

    print(f"# flux = {flux}, cover level {cover.n} (q = {cover.q_n})")
    print(f"{'lambda':>10}  {'L':>10}  {'conv':>5}  in-cover")
    for lam in lams:
        est = lyapunov(float(lam), cfg)
        inside = cover.intervals.contains(float(lam), tol=1e-12)
        print(f"{lam:10.4f}  {est.value:10.6f}  {str(est.converged):>5}  "
              f"{'yes' if inside else 'no'}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
