"""Correct and naive Lebesgue functions for two configurations of equal order."""

import argparse

import numpy as np
from csvout import write_csv

from fhstab.extended import ExtendedConfig, ExtendedInterpolant, extrapolation_coeffs
from fhstab.grid import make_equispaced
from fhstab.lebesgue import extended_lebesgue_constant, extended_lebesgue_function, naive_bound_function

CONFIGS = [(50, 3, 11, 7), (50, 7, 7, 7)]


def main():
    p = argparse.ArgumentParser()
    p.add_argument("--points", type=int, default=4001)
    p.add_argument("--outdir", default="results")
    args = p.parse_args()
    t = np.linspace(-1.0, 1.0, args.points)
    consts = {}
    for n, d, nt, dt in CONFIGS:
        cfg = ExtendedConfig(n, d, nt, dt)
        grid = make_equispaced(-1.0, 1.0, n)
        it = ExtendedInterpolant.build(grid, cfg)
        emap = extrapolation_coeffs(nt, dt, d, as_float=False)
        leb = extended_lebesgue_function(cfg, emap, it.weights, it.gridx, t)
        naive = naive_bound_function(it.weights, it.gridx, t)
        write_csv(f"{args.outdir}/lebesgue_{n}_{d}_{nt}_{dt}.csv", ["t", "lebesgue", "naive_bound"], list(zip(t, leb, naive)))
        consts[cfg] = extended_lebesgue_constant(grid, cfg).constant
    a, b = consts.values()
    print(f"constants {a:.4f} and {b:.4f}, ratio {a / b:.3f}")


if __name__ == "__main__":
    main()
