"""Largest extrapolation coefficient max|a_ij| as d = ntilde = dtilde grows."""

import argparse
import math

from csvout import write_csv

from fhstab.extended import extrapolation_coeffs


def main():
    p = argparse.ArgumentParser()
    p.add_argument("--max-d", type=int, default=40)
    p.add_argument("--output", default="results/coefficients.csv")
    args = p.parse_args()
    rows = []
    for d in range(1, args.max_d + 1):
        em = extrapolation_coeffs(d, d, d, as_float=False)
        ma = max(abs(v) for v in em.a.ravel())
        mb = max(abs(v) for v in em.b.ravel())
        rows.append((d, math.log10(float(ma)), math.log10(float(mb))))
    write_csv(args.output, ["d", "log10_max_a", "log10_max_b"], rows)


if __name__ == "__main__":
    main()
