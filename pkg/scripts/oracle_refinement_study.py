#!/usr/bin/env python3
"""Refinement study for the Whittaker finite-difference oracle.

Sweeps the grid resolution and prints, per bound level, the relative
error of the oracle energy against the closed form, plus the observed
convergence order between successive grids.  CSV to stdout.
"""

import argparse
import math
import sys

from curvedhall import numverify, spectra


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--beta", type=float, default=5.0)
    ap.add_argument("--smax", type=float, default=80.0)
    ap.add_argument("--smin", type=float, default=1e-3)
    ap.add_argument("--grids", default="2000,4000,8000,16000,32000",
                    help="comma-separated interior point counts")
    args = ap.parse_args()

    levels = spectra.halfplane_level_count(args.beta)
    analytic = [spectra.landau_halfplane(args.beta, l).energy
                for l in range(levels)]
    grids = [int(v) for v in args.grids.split(",")]

    print("n_points," + ",".join(f"relerr_l{l}" for l in range(levels)))
    prev = None
    for n in grids:
        grid = numverify.FDGrid(args.smin, args.smax, n)
        spec = numverify.whittaker_oracle(args.beta, grid, levels)
        errs = [abs(e - a) / a for e, a in zip(spec.energies, analytic)]
        print(f"{n}," + ",".join(f"{e:.6e}" for e in errs))
        if prev is not None:
            orders = [math.log2(p / e) for p, e in zip(prev, errs)]
            print("# observed order: "
                  + " ".join(f"{o:.2f}" for o in orders), file=sys.stderr)
        prev = errs


if __name__ == "__main__":
    main()
