"""Errors for sin(20t), n = 200, ntilde = dtilde = 8 fixed while delta = d grows."""

import argparse

from csvout import write_csv

from fhstab.extended import ExtendedConfig
from fhstab.functions import get_function
from fhstab.precision import PRECISE
from fhstab.stability import error_harness


def main():
    p = argparse.ArgumentParser()
    p.add_argument("--n", type=int, default=200)
    p.add_argument("--dtilde", type=int, default=8)
    p.add_argument("--max-d", type=int, default=35)
    p.add_argument("--points", type=int, default=100_000)
    p.add_argument("--output", default="results/choosing.csv")
    args = p.parse_args()
    f = get_function("sin20t")
    rows = []
    for d in range(1, args.max_d + 1):
        cfg = ExtendedConfig(args.n, d, args.dtilde, args.dtilde)
        ext = error_harness(f, cfg, args.n, args.points, ytilde_policy=PRECISE, lebesgue=1.0).max_error
        usual = error_harness(f, d, args.n, args.points, lebesgue=1.0).max_error
        rows.append((d, usual, ext))
        print(f"d={d:2d} usual={usual:.2e} extended={ext:.2e}")
    write_csv(args.output, ["d", "err_usual", "err_extended"], rows)


if __name__ == "__main__":
    main()
