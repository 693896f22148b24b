"""Errors for sin(20t), n = 200: usual FH, extended with double and precise
extrapolated data, and the alternating directed-rounding variant.

"precise_y" samples y and computes ytilde at 320 bits before rounding to
double; "precise_ytilde" keeps double y and computes only ytilde at 320 bits.
"""

import argparse

from csvout import write_csv

from fhstab.extended import ExtendedConfig
from fhstab.functions import get_function
from fhstab.grid import make_equispaced
from fhstab.lebesgue import extended_lebesgue_constant, fh_lebesgue_constant
from fhstab.precision import PRECISE
from fhstab.stability import directed_rounding_experiment, error_harness


def main():
    p = argparse.ArgumentParser()
    p.add_argument("--n", type=int, default=200)
    p.add_argument("--max-d", type=int, default=35)
    p.add_argument("--points", type=int, default=100_000)
    p.add_argument("--function", default="sin20t")
    p.add_argument("--output", default="results/rounding.csv")
    args = p.parse_args()
    f = get_function(args.function)
    n, m = args.n, args.points
    grid = make_equispaced(-1.0, 1.0, n)
    rows = []
    for d in range(1, args.max_d + 1):
        cfg = ExtendedConfig(n, d, d, d)
        lam = extended_lebesgue_constant(grid, cfg, 64).constant
        lam_fh = fh_lebesgue_constant(grid, d, 64).constant
        usual = error_harness(f, d, n, m, lebesgue=lam_fh)
        double = error_harness(f, cfg, n, m, lebesgue=lam)
        prec_yt = error_harness(f, cfg, n, m, ytilde_policy=PRECISE, lebesgue=lam)
        prec_y = error_harness(f, cfg, n, m, ytilde_policy=PRECISE, sample_policy=PRECISE, lebesgue=lam)
        directed = directed_rounding_experiment(f, cfg, n, m, lebesgue=lam)
        rows.append(
            (
                d, lam_fh, lam, usual.max_error, double.max_error, prec_yt.max_error, prec_y.max_error,
                directed.max_error, directed.max_rounding_error / directed.extra["unit_roundoff"],
            )
        )
        print(
            f"d={d:2d} usual={usual.max_error:.2e} double={double.max_error:.2e} "
            f"precise_ytilde={prec_yt.max_error:.2e} precise_y={prec_y.max_error:.2e} directed={directed.max_error:.2e}"
        )
    header = [
        "d", "lebesgue_usual", "lebesgue_extended", "err_usual", "err_double_ytilde", "err_precise_ytilde",
        "err_precise_y", "err_directed", "max_rounding_over_u",
    ]
    write_csv(args.output, header, rows)


if __name__ == "__main__":
    main()
