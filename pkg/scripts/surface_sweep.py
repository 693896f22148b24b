"""Log10 of the extended Lebesgue constant over a (d, dtilde) grid, ntilde = dtilde.

Full grid (3..20 squared at n = 100) takes a few minutes; use --step to thin it.
"""

import argparse
import math

from csvout import write_csv

from fhstab.extended import ExtendedConfig
from fhstab.grid import make_equispaced
from fhstab.lebesgue import extended_lebesgue_constant


def main():
    p = argparse.ArgumentParser()
    p.add_argument("--n", type=int, default=100)
    p.add_argument("--lo", type=int, default=3)
    p.add_argument("--hi", type=int, default=20)
    p.add_argument("--step", type=int, default=1)
    p.add_argument("--samples", type=int, default=64)
    p.add_argument("--output", default="results/surface.csv")
    args = p.parse_args()
    grid = make_equispaced(-1.0, 1.0, args.n)
    values = range(args.lo, args.hi + 1, args.step)
    rows = []
    for dt in values:
        for d in values:
            lam = extended_lebesgue_constant(grid, ExtendedConfig(args.n, d, dt, dt), args.samples).constant
            rows.append((d, dt, math.log10(lam)))
        print(f"dtilde={dt}: row min at d={min((r for r in rows if r[1] == dt), key=lambda r: r[2])[0]}")
    write_csv(args.output, ["d", "dtilde", "log10_lambda"], rows)


if __name__ == "__main__":
    main()
