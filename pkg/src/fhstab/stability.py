"""Error experiments, noise injection and backward-instability certificates."""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field

import numpy as np

from fhstab.extended import (
    ExtendedConfig,
    ExtendedInterpolant,
    ExtrapolationMap,
    LinearMap,
    extrapolate_matrix,
    extrapolate_taylor,
    extrapolation_coeffs,
)
from fhstab.fh import WeightVector, barycentric, fh_weights
from fhstab.functions import SampleFunction
from fhstab.grid import ExtendedGrid, extend, make_equispaced
from fhstab.lebesgue import extended_lebesgue_constant, fh_lebesgue_constant
from fhstab.precision import PRECISE, WORKING, PrecisionPolicy, Rounding, RoundingMonitor

ROOT_SAMPLES = 10_000
ROOT_TOL = 1e-13
EVAL_POINTS = 100_000


# --- backward instability ---------------------------------------------------


def _column(hmap: LinearMap, wt: WeightVector, gridx: ExtendedGrid, j: int):
    """``t -> d_j(t)``, same operation order as the full reduced coefficients."""
    d, n = gridx.d, gridx.n
    x = gridx.nodes()
    w = wt.values
    hl = np.asarray(hmap.left, dtype=float)[:, j]
    hr = np.asarray(hmap.right, dtype=float)[:, j]

    def dj(t):
        t = np.asarray(t, dtype=float)
        acc_l = np.zeros(t.shape)
        for r in range(d):
            acc_l += (w[r] / (t - x[r])) * hl[r]
        acc_r = np.zeros(t.shape)
        for r in range(d):
            k = d + n + 1 + r
            acc_r += (w[k] / (t - x[k])) * hr[r]
        return (acc_l + w[d + j] / (t - x[d + j])) + acc_r

    return dj


def detect_backward_instability(
    cfg: ExtendedConfig | None,
    emap: ExtrapolationMap | LinearMap,
    wt: WeightVector,
    gridx: ExtendedGrid,
    j: int,
    samples_per_interval: int = ROOT_SAMPLES,
    tol: float = ROOT_TOL,
) -> list[tuple[float, float]]:
    """Brackets ``[t1, t2]`` (width <= tol) around sign changes of ``d_j``.

    Each internodal interval is scanned at ``samples_per_interval`` uniform
    points (its endpoints included, except the pole ``x_j``); every sign
    change is bisected.  A non-empty result, together with a nonzero
    weight outside ``0..n``, certifies backward instability of the
    barycentric evaluation.
    """
    n = gridx.n
    if not 0 <= j <= n:
        raise ValueError(f"need 0 <= j <= n, got j={j}")
    if tol <= 0:
        raise ValueError("tol must be positive")
    hmap = emap.to_linear(n) if isinstance(emap, ExtrapolationMap) else emap
    dj = _column(hmap, wt, gridx, j)
    grid = gridx.base
    x = grid.nodes()
    s = samples_per_interval
    frac = np.arange(0, s + 1) / s
    los, his = [], []
    for k in range(n):
        t = x[k] + frac * grid.h
        t[-1] = x[k + 1]
        keep = np.ones(t.shape, dtype=bool)
        if k == j:
            keep[0] = False
        if k + 1 == j:
            keep[-1] = False
        t = t[keep]
        with np.errstate(divide="ignore", invalid="ignore"):
            v = dj(t)
        sign = np.sign(v)
        idx = np.nonzero(sign[:-1] * sign[1:] < 0)[0]
        los.extend(t[idx])
        his.extend(t[idx + 1])
    if not los:
        return []
    lo = np.array(los)
    hi = np.array(his)
    flo = np.sign(dj(lo))
    while np.max(hi - lo) > tol:
        mid = lo + (hi - lo) / 2
        done = (mid <= lo) | (mid >= hi)
        fm = np.sign(dj(mid))
        go_right = (fm == flo) & ~done
        go_left = (fm != flo) & ~done
        lo = np.where(go_right, mid, lo)
        hi = np.where(go_left, mid, hi)
        if np.all(done):
            break
    return [(float(a), float(b)) for a, b in zip(lo, hi)]


# --- noise ------------------------------------------------------------------


def inject_noise(y, amplitude: float, seed: int, policy: PrecisionPolicy | None = None):
    """``y_i + eta_i`` with ``eta_i`` i.i.d. uniform on ``[-amplitude, amplitude]``.

    Float input gives float output; with ``policy`` the sums are formed in
    that arithmetic (object array of mpfr).
    """
    if amplitude < 0:
        raise ValueError("noise amplitude must be >= 0")
    eta = np.random.default_rng(seed).uniform(-amplitude, amplitude, size=len(y))
    if amplitude == 0:
        eta = np.zeros(len(y))
    if policy is None:
        return np.asarray(y, dtype=float) + eta
    ar = policy.arith(0)
    out = np.empty(len(y), dtype=object)
    for i, (v, e) in enumerate(zip(y, eta)):
        out[i] = ar.add(ar.num(v), ar.num(e))
    return out


# --- error harness ----------------------------------------------------------


@dataclass
class StabilityReport:
    max_error: float
    error_over_lebesgue: float
    lebesgue_constant: float
    config: dict
    ytilde_policy: str
    eval_policy: str
    noise_amplitude: float = 0.0
    seed: int = 0
    eval_points: int = EVAL_POINTS
    route: str = "taylor"
    max_rounding_error: float = math.nan
    extra: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return asdict(self)


def _eval_points(a: float, b: float, m: int) -> np.ndarray:
    t = a + np.arange(m) * ((b - a) / (m - 1))
    t[-1] = b
    return t


def _barycentric_mp(nodes, w, y, ts, ar):
    """Barycentric quotient with every operation in ``ar``; exact node hits short-circuit."""
    out = []
    for t in ts:
        num = ar.num(0)
        den = ar.num(0)
        hit = None
        for xi, wi, yi in zip(nodes, w, y):
            diff = ar.sub(t, xi)
            if diff == 0:
                hit = yi
                break
            c = ar.div(wi, diff)
            num = ar.add(num, ar.mul(c, yi))
            den = ar.add(den, c)
        out.append(hit if hit is not None else ar.div(num, den))
    return out


def error_harness(
    f: SampleFunction,
    cfg_or_delta: ExtendedConfig | int,
    n: int,
    eval_points: int = EVAL_POINTS,
    ytilde_policy: PrecisionPolicy = WORKING,
    eval_policy: PrecisionPolicy = WORKING,
    noise: tuple[float, int] | None = None,
    a: float = -1.0,
    b: float = 1.0,
    route: str = "taylor",
    lebesgue: float | None = None,
    monitor: RoundingMonitor | None = None,
    sample_policy: PrecisionPolicy | None = None,
) -> StabilityReport:
    """Max error of a numerically evaluated interpolant of ``f``.

    ``f`` is sampled at the nodes under ``sample_policy`` (defaults to
    ``eval_policy``), optionally perturbed by seeded uniform noise
    ``(amplitude, seed)``, extrapolated under ``ytilde_policy`` (``route``
    is ``"taylor"`` or ``"matrix"``), rounded to the evaluation precision
    and evaluated by the barycentric formula at ``eval_points`` equispaced
    points in ``[a, b]`` under ``eval_policy``.  An integer
    ``cfg_or_delta`` selects the usual FH interpolant.
    """
    if eval_points < 1000:
        raise ValueError("eval_points must be >= 1000")
    grid = make_equispaced(a, b, n)
    sample_policy = sample_policy or eval_policy
    extended = isinstance(cfg_or_delta, ExtendedConfig)
    if extended and cfg_or_delta.n != n:
        raise ValueError(f"config has n={cfg_or_delta.n} but n={n}")

    sar = sample_policy.arith(0)
    if sample_policy.is_binary64:
        y = f(grid.nodes())
    else:
        h = sar.div(sar.sub(sar.num(b), sar.num(a)), sar.num(n))
        y = np.array([f.mp(sar.add(sar.num(a), sar.mul(sar.num(i), h)), sar) for i in range(n + 1)], dtype=object)
    amp, seed = noise if noise is not None else (0.0, 0)
    if amp:
        y = inject_noise(y, amp, seed, None if sample_policy.is_binary64 else sample_policy)

    if extended:
        cfg = cfg_or_delta
        d = cfg.d
        if route == "taylor":
            yt = extrapolate_taylor(grid, cfg, y, ytilde_policy, monitor)
        elif route == "matrix":
            emap = extrapolation_coeffs(cfg.ntilde, cfg.dtilde, d, PRECISE, as_float=ytilde_policy.mantissa_bits <= 53)
            yt = extrapolate_matrix(y, emap, ytilde_policy)
        else:
            raise ValueError(f"unknown extrapolation route {route!r}")
        weights = fh_weights(n + 2 * d, d)
        config = asdict(cfg)
    else:
        d = 0
        yt = y
        weights = fh_weights(n, int(cfg_or_delta))
        config = {"n": n, "delta": int(cfg_or_delta)}

    ts = _eval_points(a, b, eval_points)
    if eval_policy.is_binary64:
        x = extend(grid, d).nodes()
        ytf = np.array([float(v) for v in yt])
        vals = np.concatenate(
            [barycentric(x, weights.values, ytf, ts[i:i + 2048]) for i in range(0, ts.size, 2048)]
        )
        ref = f(ts)
        max_error = float(np.max(np.abs(vals - ref)))
    else:
        ar = eval_policy.arith(0)
        h = ar.div(ar.sub(ar.num(b), ar.num(a)), ar.num(n))
        x = [ar.add(ar.num(a), ar.mul(ar.num(i), h)) for i in range(-d, n + d + 1)]
        w = [ar.num(v) for v in weights.exact]
        ytm = [ar.num(v) for v in yt]
        step = ar.div(ar.sub(ar.num(b), ar.num(a)), ar.num(eval_points - 1))
        tm = [ar.add(ar.num(a), ar.mul(ar.num(m), step)) for m in range(eval_points)]
        vals = _barycentric_mp(x, w, ytm, tm, ar)
        max_error = float(max(abs(ar.sub(v, f.mp(t, ar))) for v, t in zip(vals, tm)))

    if lebesgue is None:
        if extended:
            lebesgue = extended_lebesgue_constant(grid, cfg_or_delta).constant
        else:
            lebesgue = fh_lebesgue_constant(grid, int(cfg_or_delta)).constant
    return StabilityReport(
        max_error=max_error,
        error_over_lebesgue=max_error / lebesgue,
        lebesgue_constant=lebesgue,
        config=config,
        ytilde_policy=ytilde_policy.label if extended else "n/a",
        eval_policy=eval_policy.label,
        noise_amplitude=amp,
        seed=seed,
        eval_points=eval_points,
        route=route if extended else "n/a",
        max_rounding_error=monitor.max_relative_error if monitor is not None else math.nan,
    )


def directed_rounding_experiment(
    f: SampleFunction,
    cfg: ExtendedConfig,
    n: int,
    eval_points: int = EVAL_POINTS,
    bits: int = 53,
    lebesgue: float | None = None,
    route: str = "taylor",
) -> StabilityReport:
    """Extrapolated values rounded up at even indices and down at odd ones.

    Every rounding of the extrapolation step is monitored; the report's
    ``max_rounding_error`` is the largest relative error of a single
    operation.
    """
    policy = PrecisionPolicy(bits, Rounding.ALTERNATE, f"{bits}b-alternate")
    mon = RoundingMonitor()
    rep = error_harness(
        f, cfg, n, eval_points, ytilde_policy=policy, lebesgue=lebesgue, monitor=mon, route=route
    )
    rep.extra["unit_roundoff"] = policy.unit_roundoff
    rep.extra["monitored_operations"] = mon.count
    return rep


def perturbation_shift(
    interp: ExtendedInterpolant, t: float, k: int, xi: float
) -> float:
    """Change of the barycentric value when extended datum ``k`` moves by ``xi``."""
    x = interp.gridx.node(k)
    w = interp.weights[k]
    return float(xi * (w / (t - x)) / interp.Q(t)[0])
