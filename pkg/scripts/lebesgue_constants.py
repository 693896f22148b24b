"""Usual FH, extended (d = ntilde = dtilde = delta) and polynomial Lebesgue constants."""

import argparse
import math

from csvout import write_csv

from fhstab.extended import ExtendedConfig
from fhstab.grid import make_equispaced
from fhstab.lebesgue import extended_lebesgue_constant, fh_lebesgue_constant, poly_lebesgue_constant


def main():
    p = argparse.ArgumentParser()
    p.add_argument("--n", type=int, default=200)
    p.add_argument("--max-d", type=int, default=35)
    p.add_argument("--samples", type=int, default=64)
    p.add_argument("--output", default="results/lebesgue_constants.csv")
    args = p.parse_args()
    grid = make_equispaced(-1.0, 1.0, args.n)
    rows = []
    for d in range(1, args.max_d + 1):
        usual = fh_lebesgue_constant(grid, d, args.samples).constant
        ext = extended_lebesgue_constant(grid, ExtendedConfig(args.n, d, d, d), args.samples).constant
        poly = poly_lebesgue_constant(d)
        rows.append((d, math.log10(usual), math.log10(ext), math.log10(poly), usual / ext))
        print(f"d={d:2d} usual={usual:.3e} extended={ext:.3e} poly={poly:.3e} ratio={usual / ext:.1f}")
    write_csv(args.output, ["d", "log10_usual", "log10_extended", "log10_poly", "usual_over_extended"], rows)


if __name__ == "__main__":
    main()
