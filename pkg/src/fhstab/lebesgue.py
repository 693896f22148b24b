"""Lebesgue functions and constants for usual and extended FH interpolants.

The extended Lebesgue function accounts for how the extrapolated values
depend on the data, through the reduced-form coefficients.  The "naive"
function treats the extrapolated values as exact data; it is kept only to
show that it does not bound the true one.

Constants are sampled maxima refined by golden-section search, hence lower
bounds of the true suprema.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from fhstab import ddarith as dd
from fhstab.extended import (
    ConfigError,
    ExtendedConfig,
    ExtendedInterpolant,
    ExtrapolationMap,
    LinearMap,
    compensated_reduced_coeffs,
    denominator,
    grid_coordinates,
    extrapolation_coeffs,
    general_reduced_coeffs,
    reduced_coeffs,
)
from fhstab.fh import WeightVector, fh_weights
from fhstab.grid import EquispacedGrid, ExtendedGrid, make_equispaced

# points closer than this (in units of h) to a node take the node value 1
NODE_SNAP = 2.0**-600
GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0
DEFAULT_SAMPLES = 256
CHUNK = 4096


@dataclass(frozen=True)
class LebesgueReport:
    constant: float
    argmax_t: float
    samples_per_interval: int
    refinement_tolerance: float
    naive_bound_constant: float = math.nan
    log_bound: float = math.nan
    sampled_max: float = math.nan


@dataclass(frozen=True)
class WorstCaseVector:
    values: np.ndarray
    d: int


def _near_nodes(t: np.ndarray, nodes: np.ndarray, h: float) -> np.ndarray:
    return (np.abs(t[:, None] - nodes[None, :]) <= NODE_SNAP * h).any(axis=1)


def _ratio_of_sums(w: np.ndarray, x: np.ndarray, t: np.ndarray, h: float) -> np.ndarray:
    out = np.ones(t.shape)
    off = ~_near_nodes(t, x, h)
    if off.any():
        terms = w[None, :] / (t[off, None] - x[None, :])
        out[off] = np.abs(terms).sum(axis=1) / np.abs(terms.sum(axis=1))
    return out


def fh_lebesgue_function(grid: EquispacedGrid, weights: WeightVector, t):
    scalar = np.ndim(t) == 0
    t = np.atleast_1d(np.asarray(t, dtype=float))
    out = _ratio_of_sums(weights.values, grid.nodes(), t, grid.h)
    return float(out[0]) if scalar else out


def extended_lebesgue_function(
    cfg: ExtendedConfig | None,
    emap: ExtrapolationMap | LinearMap,
    wt: WeightVector,
    gridx: ExtendedGrid,
    t,
    compensated: bool = True,
):
    """``sum_j |c_j(t)| / |Q(t)|`` with reduced coefficients of ``emap``.

    ``emap`` may be the Taylor map (with its config) or any linear map.
    Nodes of ``x_0..x_n`` get the limit value 1.  With ``compensated`` the
    coefficients are accumulated in double-double; pass a map holding
    high-precision entries for full benefit at large ``d``.
    """
    scalar = np.ndim(t) == 0
    t = np.atleast_1d(np.asarray(t, dtype=float))
    hit = _near_nodes(t, gridx.base.nodes(), gridx.h)
    if compensated:
        sh, sl = grid_coordinates(gridx, t)
        k = np.round(sh)
        rh, _ = dd.add(sh, sl, -k, np.zeros_like(k))
        hit |= (np.abs(rh) <= NODE_SNAP) & (k >= 0) & (k <= gridx.n)
    out = np.ones(t.shape)
    s = t[~hit]
    if s.size:
        if compensated:
            c, Q = compensated_reduced_coeffs(emap, wt, gridx, s, with_denominator=True)
        elif isinstance(emap, LinearMap):
            c, Q = general_reduced_coeffs(emap, wt, gridx, s), denominator(wt, gridx, s)
        else:
            c, Q = reduced_coeffs(cfg, emap, wt, gridx, s), denominator(wt, gridx, s)
        out[~hit] = np.abs(c).sum(axis=1) / np.abs(Q)
    return float(out[0]) if scalar else out


def naive_bound_function(wt: WeightVector, gridx: ExtendedGrid, t):
    scalar = np.ndim(t) == 0
    t = np.atleast_1d(np.asarray(t, dtype=float))
    out = _ratio_of_sums(wt.values, gridx.nodes(), t, gridx.h)
    return float(out[0]) if scalar else out


def _chunked(func: Callable, t: np.ndarray) -> np.ndarray:
    return np.concatenate([np.atleast_1d(func(t[i:i + CHUNK])) for i in range(0, t.size, CHUNK)])


def scan_points(grid: EquispacedGrid, samples_per_interval: int, intervals: Sequence[int] | None = None):
    """Interior sample points ``x_k + (m / s) h``, ``m = 1..s-1``, per interval.

    Doubling ``s`` reproduces every previous point bit-for-bit.
    """
    s = samples_per_interval
    ks = np.arange(grid.n) if intervals is None else np.asarray(intervals)
    frac = np.arange(1, s) / s
    x = grid.nodes()
    t = x[ks][:, None] + frac[None, :] * grid.h
    return ks, t


def lebesgue_constant(
    function: Callable,
    gridx: ExtendedGrid | EquispacedGrid,
    samples_per_interval: int = DEFAULT_SAMPLES,
    rtol: float = 1e-6,
    intervals: Sequence[int] | None = None,
    naive: Callable | None = None,
) -> LebesgueReport:
    """Maximize a Lebesgue function over ``[x_0, x_n]``.

    Each internodal interval (of the base grid) is scanned uniformly; the
    best sample of every interval is then refined by golden-section search
    until the bracket is narrower than ``rtol * h``.  ``function`` must
    accept an array of points.
    """
    if samples_per_interval < 16:
        raise ValueError("samples_per_interval must be >= 16")
    grid = gridx.base if isinstance(gridx, ExtendedGrid) else gridx
    d = gridx.d if isinstance(gridx, ExtendedGrid) else 0
    ks, t = scan_points(grid, samples_per_interval, intervals)
    vals = _chunked(function, t.ravel()).reshape(t.shape)
    sampled_max = float(vals.max())

    best = vals.argmax(axis=1)
    x = grid.nodes()
    lo = np.where(best > 0, t[np.arange(len(ks)), np.maximum(best - 1, 0)], x[ks])
    hi = np.where(best < t.shape[1] - 1, t[np.arange(len(ks)), np.minimum(best + 1, t.shape[1] - 1)], x[ks + 1])
    top_v = vals[np.arange(len(ks)), best]
    top_t = t[np.arange(len(ks)), best]

    c = hi - GOLDEN * (hi - lo)
    e = lo + GOLDEN * (hi - lo)
    fc = _chunked(function, c)
    fe = _chunked(function, e)
    tol = rtol * grid.h
    while np.max(hi - lo) > tol:
        for pts, fv in ((c, fc), (e, fe)):
            better = fv > top_v
            top_v = np.where(better, fv, top_v)
            top_t = np.where(better, pts, top_t)
        left = fc >= fe
        hi = np.where(left, e, hi)
        lo = np.where(left, lo, c)
        new_c = np.where(left, hi - GOLDEN * (hi - lo), e)
        new_e = np.where(left, c, lo + GOLDEN * (hi - lo))
        probe = np.where(left, new_c, new_e)
        fp = _chunked(function, probe)
        fc, fe = np.where(left, fp, fe), np.where(left, fc, fp)
        c, e = new_c, new_e
    for pts, fv in ((c, fc), (e, fe)):
        better = fv > top_v
        top_v = np.where(better, fv, top_v)
        top_t = np.where(better, pts, top_t)

    k = int(top_v.argmax())
    naive_max = math.nan
    if naive is not None:
        naive_max = float(_chunked(naive, t.ravel()).max())
    return LebesgueReport(
        constant=float(top_v[k]),
        argmax_t=float(top_t[k]),
        samples_per_interval=samples_per_interval,
        refinement_tolerance=rtol,
        naive_bound_constant=naive_max,
        log_bound=2.0 + math.log(grid.n + 2 * d),
        sampled_max=sampled_max,
    )


def fh_lebesgue_constant(
    grid: EquispacedGrid, delta: int, samples_per_interval: int = DEFAULT_SAMPLES
) -> LebesgueReport:
    w = fh_weights(grid.n, delta)
    return lebesgue_constant(lambda t: fh_lebesgue_function(grid, w, t), grid, samples_per_interval)


def extended_lebesgue_constant(
    grid: EquispacedGrid, cfg: ExtendedConfig, samples_per_interval: int = DEFAULT_SAMPLES
) -> LebesgueReport:
    """Correct Lebesgue constant of the Taylor-extended interpolant, plus the naive one."""
    it = ExtendedInterpolant.build(grid, cfg)
    emap = extrapolation_coeffs(cfg.ntilde, cfg.dtilde, cfg.d, as_float=False)
    return lebesgue_constant(
        lambda t: extended_lebesgue_function(cfg, emap, it.weights, it.gridx, t),
        it.gridx,
        samples_per_interval,
        naive=lambda t: naive_bound_function(it.weights, it.gridx, t),
    )


def poly_lebesgue_report(d: int, samples_per_interval: int = DEFAULT_SAMPLES) -> LebesgueReport:
    """Lebesgue constant of polynomial interpolation at nodes ``0, 1, ..., d``.

    The maximum is sought in ``(0, 1)`` first, then the other intervals are
    scanned to confirm it; the larger value wins.
    """
    if d < 1:
        raise ValueError("d >= 1 required")
    grid = make_equispaced(0.0, float(d), d)
    w = fh_weights(d, d)

    def func(t):
        return fh_lebesgue_function(grid, w, t)

    first = lebesgue_constant(func, grid, samples_per_interval, intervals=[0])
    if d == 1:
        return first
    rest = lebesgue_constant(func, grid, samples_per_interval, intervals=range(1, d))
    return rest if rest.constant > first.constant else first


def poly_lebesgue_constant(d: int, samples_per_interval: int = DEFAULT_SAMPLES) -> float:
    return poly_lebesgue_report(d, samples_per_interval).constant


def kappa(d: int) -> float:
    if d < 2:
        raise ValueError("kappa is defined for d >= 2")
    return 1.0 - d / (2.0 ** d - 1.0) - 2.0 ** -d


def worst_case_vector(n: int, d: int) -> WorstCaseVector:
    """Signs ``y0 = y1 = (-1)^d`` and ``yj = (-1)^(d+j-1)`` for ``j >= 2``."""
    if not n > d + 1 >= 3:
        raise ConfigError(f"n > d + 1 >= 3 violated (n={n}, d={d})")
    y = np.empty(n + 1)
    y[0] = y[1] = (-1.0) ** d
    j = np.arange(2, n + 1)
    y[2:] = (-1.0) ** (d + j - 1)
    return WorstCaseVector(y, d)


@dataclass(frozen=True)
class Theorem1Report:
    n: int
    d: int
    lhs: float
    rhs: float
    holds: bool
    kappa: float
    poly_constant: float
    t_star: float
    sampled_constant: float
    sampled_holds: bool


def theorem1_check(
    n: int,
    d: int,
    samples_per_interval: int = DEFAULT_SAMPLES,
    a: float = -1.0,
    b: float = 1.0,
) -> Theorem1Report:
    """Compare the extended Lebesgue constant (``d = ntilde = dtilde``) with
    ``kappa_d * Lambda_d``.

    ``lhs`` is ``|r[y*](t*)|`` at the argmax ``t*`` of the polynomial
    Lebesgue function in ``(x_0, x_1)``, a lower bound for the constant.
    """
    if not n > d + 1 >= 3:
        raise ConfigError(f"n > d + 1 >= 3 violated (n={n}, d={d})")
    grid = make_equispaced(a, b, n)
    cfg = ExtendedConfig(n, d, d, d)
    poly = poly_lebesgue_report(d, samples_per_interval)
    # the maximum of the polynomial Lebesgue function sits in (0, 1)
    first = lebesgue_constant(
        lambda t: fh_lebesgue_function(make_equispaced(0.0, float(d), d), fh_weights(d, d), t),
        make_equispaced(0.0, float(d), d),
        samples_per_interval,
        intervals=[0],
    )
    t_star = a + first.argmax_t * grid.h
    it = ExtendedInterpolant.build(grid, cfg)
    ystar = worst_case_vector(n, d).values
    lhs = abs(float(it(ystar, t_star)))
    rhs = kappa(d) * poly.constant
    full = extended_lebesgue_constant(grid, cfg, samples_per_interval)
    return Theorem1Report(
        n=n,
        d=d,
        lhs=lhs,
        rhs=rhs,
        holds=bool(lhs >= rhs),
        kappa=kappa(d),
        poly_constant=poly.constant,
        t_star=t_star,
        sampled_constant=full.constant,
        sampled_holds=bool(full.constant >= rhs),
    )
