"""Extended Floater-Hormann interpolants.

The data ``y`` on ``x_0..x_n`` is padded with ``d`` extrapolated values on
each side, obtained from a discrete Taylor series whose derivatives are
those of the FH interpolant (parameter ``dtilde``) through the first/last
``ntilde + 1`` nodes.  The padded data is then fed to the FH barycentric
formula with parameter ``d`` on the extended grid.

Extrapolation is linear in ``y``; the matrices ``a``/``b`` capture it and
only depend on ``(ntilde, dtilde)``.  The reduced form rewrites the whole
interpolant in terms of the original data; it is used for diagnostics
(Lebesgue functions, backward-stability certificates), not for production
evaluation.
"""

from __future__ import annotations

import functools
import math
import threading
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from fhstab import ddarith as dd
from fhstab.fh import WeightVector, _Plain, barycentric, derivative_rows, fh_weight_ints
from fhstab.grid import EquispacedGrid, ExtendedGrid, extend
from fhstab.precision import PRECISE, WORKING, PrecisionPolicy, RoundingMonitor


class ConfigError(ValueError):
    """An invalid combination of interpolant parameters."""


@dataclass(frozen=True)
class ExtendedConfig:
    n: int
    d: int
    ntilde: int
    dtilde: int

    def __post_init__(self):
        if self.n < 1:
            raise ConfigError(f"n >= 1 violated (n={self.n})")
        if self.d < 0:
            raise ConfigError(f"d >= 0 violated (d={self.d})")
        if self.dtilde < 0:
            raise ConfigError(f"dtilde >= 0 violated (dtilde={self.dtilde})")
        if self.dtilde > self.ntilde:
            raise ConfigError(f"dtilde <= ntilde violated (dtilde={self.dtilde}, ntilde={self.ntilde})")
        if self.ntilde >= self.n:
            raise ConfigError(f"ntilde < n violated (ntilde={self.ntilde}, n={self.n})")

    @property
    def mu(self) -> int:
        return min(self.d, self.dtilde)

    @property
    def two_sided_overlap(self) -> bool:
        return 2 * self.ntilde >= self.n


@dataclass(frozen=True)
class ExtrapolationMap:
    """Taylor extrapolation matrices.

    ``a[r, j]`` is the coefficient of ``y_j`` (``0 <= j <= ntilde``) in the
    extrapolated value at index ``i = r - d``.  ``b[r, c]`` is the
    coefficient of ``y_{n + c - ntilde}`` in the value at index ``n + r + 1``.
    Entries are float64 or, for a high-precision map, mpfr objects.
    """

    ntilde: int
    dtilde: int
    d: int
    a: np.ndarray
    b: np.ndarray

    def a_at(self, i: int, j: int):
        return self.a[i + self.d, j]

    def b_at(self, i: int, j: int):
        return self.b[i - 1, j + self.ntilde]

    def to_linear(self, n: int) -> LinearMap:
        """The same map written as dense ``h_ij`` rows over ``y_0..y_n``."""
        nt = self.ntilde
        if nt >= n:
            raise ConfigError(f"ntilde < n violated (ntilde={nt}, n={n})")
        dtype = self.a.dtype
        left = np.zeros((self.d, n + 1), dtype=dtype)
        right = np.zeros((self.d, n + 1), dtype=dtype)
        if dtype == object:
            left[:] = 0.0
            right[:] = 0.0
        left[:, : nt + 1] = self.a
        right[:, n - nt:] = self.b
        return LinearMap(self.d, left, right)


@dataclass(frozen=True)
class LinearMap:
    """General linear extrapolation ``ytilde_i = sum_j h_ij y_j`` off ``0..n``.

    ``left[r]`` gives index ``r - d`` and ``right[r]`` index ``n + 1 + r``.
    The block on ``0..n`` is always the identity.
    """

    d: int
    left: np.ndarray
    right: np.ndarray

    @property
    def n(self) -> int:
        return self.left.shape[1] - 1


# --- extrapolation coefficients ---------------------------------------------

_coeff_lock = threading.Lock()


def _boundary_rows(ntilde: int, dtilde: int, policy: PrecisionPolicy | None):
    w = fh_weight_ints(ntilde, dtilde)
    if policy is None:
        ar = _Plain(exact=True)
        w = [Fraction(v) for v in w]
    else:
        ar = policy.arith()
    rows = derivative_rows(w, dtilde, rows=[0, ntilde], arith=ar)
    return ar, rows


@functools.lru_cache(maxsize=256)
def _coeffs_cached(ntilde: int, dtilde: int, d: int, policy: PrecisionPolicy | None):
    ar, rows = _boundary_rows(ntilde, dtilde, policy)
    m = ntilde + 1
    a = np.empty((d, m), dtype=object)
    b = np.empty((d, m), dtype=object)
    for r in range(d):
        i_left = r - d
        i_right = r + 1
        for j in range(m):
            acc_a = ar.num(0)
            acc_b = ar.num(0)
            for k in range(dtilde + 1):
                acc_a = ar.add(acc_a, ar.mul(rows[k][0][j], ar.num(i_left ** k)))
                acc_b = ar.add(acc_b, ar.mul(rows[k][ntilde][j], ar.num(i_right ** k)))
            a[r, j] = acc_a
            b[r, j] = acc_b
    return a, b


def extrapolation_coeffs(
    ntilde: int,
    dtilde: int,
    d: int,
    policy: PrecisionPolicy | None = PRECISE,
    as_float: bool = True,
) -> ExtrapolationMap:
    """Taylor extrapolation matrices for ``(ntilde, dtilde)`` and ``d`` rows.

    The normalized derivative recurrence is run under ``policy`` (exact
    rational arithmetic when ``policy`` is None).  With ``as_float`` the
    result is rounded once to float64.
    """
    if dtilde > ntilde:
        raise ConfigError(f"dtilde <= ntilde violated (dtilde={dtilde}, ntilde={ntilde})")
    if dtilde < 0 or d < 0:
        raise ConfigError("dtilde >= 0 and d >= 0 required")
    with _coeff_lock:
        a, b = _coeffs_cached(ntilde, dtilde, d, policy)
    if as_float:
        a = a.astype(float) if a.size else np.zeros((d, ntilde + 1))
        b = b.astype(float) if b.size else np.zeros((d, ntilde + 1))
    else:
        a, b = a.copy(), b.copy()
    return ExtrapolationMap(ntilde, dtilde, d, a, b)


# --- extrapolation ----------------------------------------------------------


def extrapolate_taylor(
    grid: EquispacedGrid,
    cfg: ExtendedConfig,
    y,
    policy: PrecisionPolicy = WORKING,
    monitor: RoundingMonitor | None = None,
) -> np.ndarray:
    """Extended data by Taylor series with FH derivatives, under ``policy``.

    Returns an object array of mpfr values for indices ``-d .. n + d``.  With
    ``alternate_by_index`` rounding, each extrapolated value (derivatives
    included) is computed in the rounding direction of its own index.
    """
    n, d, nt, dt = cfg.n, cfg.d, cfg.ntilde, cfg.dtilde
    if grid.n != n:
        raise ConfigError(f"grid has n={grid.n} but config has n={n}")
    if len(y) != n + 1:
        raise ValueError(f"expected {n + 1} data values, got {len(y)}")
    w = fh_weight_ints(nt, dt)
    out = np.empty(n + 2 * d + 1, dtype=object)
    mid = policy.arith(0)
    for j in range(n + 1):
        out[d + j] = mid.num(y[j])

    def side(indices, base, row, local):
        cache = {}
        for i in indices:
            key = policy.rounding_for(i)
            if key not in cache:
                ar = policy.arith(i, monitor)
                h = ar.div(ar.sub(ar.num(grid.b), ar.num(grid.a)), ar.num(n))
                yl = [ar.num(v) for v in local]
                rows = derivative_rows(w, dt, rows=[row], h=h, arith=ar)
                derivs = [ar.dot(rows[k][row], yl) for k in range(1, dt + 1)]
                cache[key] = (ar, h, yl[row], derivs)
            ar, h, y0, derivs = cache[key]
            step = ar.mul(ar.num(i - base), h)
            acc = y0
            power = ar.num(1)
            for k in range(1, dt + 1):
                power = ar.mul(power, step)
                term = ar.div(ar.mul(derivs[k - 1], power), ar.num(math.factorial(k)))
                acc = ar.add(acc, term)
            out[d + i] = acc

    side(range(-d, 0), 0, 0, y[: nt + 1])
    side(range(n + 1, n + d + 1), n, nt, y[n - nt:])
    return out


def extrapolate_matrix(y, emap: ExtrapolationMap | LinearMap, policy: PrecisionPolicy | None = None) -> np.ndarray:
    """Extended data ``ytilde`` (indices ``-d .. n + d``) from a linear map.

    With ``policy=None`` the products are formed in float64; otherwise each
    extrapolated value is accumulated under ``policy`` (rounding direction
    chosen by its index) and the result is an object array.
    """
    if isinstance(emap, ExtrapolationMap):
        n = len(y) - 1
        lin = emap.to_linear(n)
    else:
        lin = emap
    n = lin.n
    if len(y) != n + 1:
        raise ValueError(f"map expects {n + 1} data values, got {len(y)}")
    d = lin.d
    if policy is None:
        yv = np.asarray(y, dtype=float)
        left = np.asarray(lin.left, dtype=float)
        right = np.asarray(lin.right, dtype=float)
        return np.concatenate([left @ yv if d else np.empty(0), yv, right @ yv if d else np.empty(0)])
    out = np.empty(n + 2 * d + 1, dtype=object)
    mid = policy.arith(0)
    for j in range(n + 1):
        out[d + j] = mid.num(y[j])
    for r in range(d):
        for i, row in ((r - d, lin.left[r]), (n + 1 + r, lin.right[r])):
            ar = policy.arith(i)
            yl = [ar.num(v) for v in y]
            out[d + i] = ar.dot([ar.num(v) for v in row], yl)
    return out


# --- extended interpolant -----------------------------------------------------


def extended_weights(n: int, d: int) -> WeightVector:
    if d < 0:
        raise ConfigError(f"d >= 0 violated (d={d})")
    return WeightVector(tuple(fh_weight_ints(n + 2 * d, d)), -d, f"ExtendedFH({n},{d})")


def extended_eval(gridx: ExtendedGrid, wt: WeightVector, ytilde, t):
    """Barycentric evaluation over the extended nodes (production path)."""
    yt = np.asarray(ytilde, dtype=float)
    m = gridx.n + 2 * gridx.d + 1
    if len(wt) != m or yt.shape != (m,) or wt.first != -gridx.d:
        raise ValueError("extended weights/data do not match the extended grid")
    return barycentric(gridx.nodes(), wt.values, yt, t)


def denominator(wt: WeightVector, gridx: ExtendedGrid, t) -> np.ndarray:
    """``Q(t) = sum_i wt_i / (t - xt_i)`` over all extended nodes."""
    t = np.atleast_1d(np.asarray(t, dtype=float))
    return (wt.values[None, :] / (t[:, None] - gridx.nodes()[None, :])).sum(axis=1)


def _check_off_nodes(gridx: ExtendedGrid, t: np.ndarray):
    if np.any(t[:, None] == gridx.nodes()[None, :]):
        raise ValueError("reduced coefficients are undefined at a node")


def _side_terms(wt: WeightVector, gridx: ExtendedGrid, t: np.ndarray):
    """``wt_i / (t - xt_i)`` for the left (``-d..-1``) and right (``n+1..n+d``) pads."""
    d, n = gridx.d, gridx.n
    x = gridx.nodes()
    w = wt.values
    left = w[None, :d] / (t[:, None] - x[None, :d])
    right = w[None, d + n + 1:] / (t[:, None] - x[None, d + n + 1:])
    mid = w[None, d:d + n + 1] / (t[:, None] - x[None, d:d + n + 1])
    return left, mid, right


def _accumulate(terms: np.ndarray, coeffs: np.ndarray) -> np.ndarray:
    acc = np.zeros((terms.shape[0], coeffs.shape[1]))
    for r in range(terms.shape[1]):
        acc += terms[:, r, None] * coeffs[None, r, :]
    return acc


def reduced_ranges(n: int, ntilde: int, branch: str = "auto"):
    """Index ranges ``(left_only, both, right_only)`` of the reduced form.

    ``"disjoint"`` is the ``2*ntilde < n`` case, ``"overlap"`` the
    ``2*ntilde >= n`` one; ``"auto"`` picks by that test.  Indices outside
    all three ranges carry only their own barycentric term.
    """
    if branch == "auto":
        branch = "disjoint" if 2 * ntilde < n else "overlap"
    if branch == "disjoint":
        if 2 * ntilde >= n:
            raise ConfigError("disjoint reduced form needs 2*ntilde < n")
        return range(0, ntilde + 1), range(0), range(n - ntilde, n + 1)
    if branch == "overlap":
        if 2 * ntilde < n - 1:
            raise ConfigError("overlap reduced form needs 2*ntilde >= n - 1")
        return range(0, n - ntilde), range(n - ntilde, ntilde + 1), range(ntilde + 1, n + 1)
    raise ValueError(f"unknown branch {branch!r}")


def reduced_coeffs(
    cfg: ExtendedConfig,
    emap: ExtrapolationMap,
    wt: WeightVector,
    gridx: ExtendedGrid,
    t,
    branch: str = "auto",
) -> np.ndarray:
    """Coefficients ``c_j(t)`` with ``r(t) = sum_j c_j(t) y_j / Q(t)``.

    Returns shape ``(n + 1,)`` for scalar ``t`` and ``(len(t), n + 1)``
    otherwise.
    """
    scalar = np.ndim(t) == 0
    t = np.atleast_1d(np.asarray(t, dtype=float))
    _check_off_nodes(gridx, t)
    n, nt = cfg.n, cfg.ntilde
    a = np.asarray(emap.a, dtype=float)
    b = np.asarray(emap.b, dtype=float)
    left, mid, right = _side_terms(wt, gridx, t)
    from_left = _accumulate(left, a)  # columns j = 0..ntilde
    from_right = _accumulate(right, b)  # columns j = n-ntilde..n
    c = mid.copy()
    left_only, both, right_only = reduced_ranges(n, nt, branch)
    for j in left_only:
        c[:, j] = from_left[:, j] + mid[:, j]
    for j in both:
        c[:, j] = (from_left[:, j] + mid[:, j]) + from_right[:, j - (n - nt)]
    for j in right_only:
        c[:, j] = mid[:, j] + from_right[:, j - (n - nt)]
    return c[0] if scalar else c


def general_reduced_coeffs(hmap: LinearMap, wt: WeightVector, gridx: ExtendedGrid, t) -> np.ndarray:
    """Reduced coefficients ``d_j(t)`` for an arbitrary linear extrapolation."""
    scalar = np.ndim(t) == 0
    t = np.atleast_1d(np.asarray(t, dtype=float))
    _check_off_nodes(gridx, t)
    left, mid, right = _side_terms(wt, gridx, t)
    c = (_accumulate(left, np.asarray(hmap.left, dtype=float)) + mid) + _accumulate(
        right, np.asarray(hmap.right, dtype=float)
    )
    return c[0] if scalar else c


def grid_coordinates(gridx: ExtendedGrid, t) -> tuple[np.ndarray, np.ndarray]:
    """``(t - a) / h`` as a double-double pair; node ``i`` sits at exactly ``i``."""
    t = np.atleast_1d(np.asarray(t, dtype=float))
    dh, dl = dd.two_sum(t, -gridx.base.a)
    h = gridx.h
    return dd.div(dh, dl, np.full_like(t, h), np.zeros_like(t))


def _dd_terms(sh, sl, idx, w_hi, w_lo):
    """``w_r / (s - idx_r)`` for each column ``r``, shape ``(len(s), len(idx))``."""
    idx = np.asarray(idx, dtype=float)
    gh, gl = dd.add(sh[:, None], sl[:, None], -idx[None, :], np.zeros((1, idx.size)))
    shape = gh.shape
    return dd.div(np.broadcast_to(w_hi, shape), np.broadcast_to(w_lo, shape), gh, gl)


def _dd_block(qh, ql, coeff_hi, coeff_lo):
    """``sum_r q_r * coeff[r, :]`` in double-double, fixed order over ``r``."""
    acc_h = np.zeros((qh.shape[0], coeff_hi.shape[1]))
    acc_l = np.zeros_like(acc_h)
    for r in range(qh.shape[1]):
        ph, pl = dd.mul(qh[:, r, None], ql[:, r, None], coeff_hi[None, r, :], coeff_lo[None, r, :])
        acc_h, acc_l = dd.add(acc_h, acc_l, ph, pl)
    return acc_h, acc_l


def _split_map(m) -> tuple[np.ndarray, np.ndarray]:
    m = np.asarray(m)
    if m.dtype == object:
        return dd.from_mpfr(m)
    return m.astype(float), np.zeros(m.shape)


def compensated_reduced_coeffs(
    emap: ExtrapolationMap | LinearMap, wt: WeightVector, gridx: ExtendedGrid, t, with_denominator: bool = False
):
    """Reduced coefficients accumulated in double-double arithmetic.

    Node offsets are taken on the exact grid in units of ``h`` and map
    entries keep their low-order parts when ``emap`` holds high-precision
    values, so the heavy cancellation among the pad contributions for large
    ``d`` does not destroy the result.  Returns float64 values shaped like
    :func:`reduced_coeffs`; with ``with_denominator`` also ``Q(t)`` formed
    from the same offsets.
    """
    scalar = np.ndim(t) == 0
    t = np.atleast_1d(np.asarray(t, dtype=float))
    _check_off_nodes(gridx, t)
    d, n = gridx.d, gridx.n
    sh, sl = grid_coordinates(gridx, t)
    w_hi, w_lo = dd.from_mpfr([Fraction(v) for v in wt.exact])
    qh, ql = _dd_terms(sh, sl, np.arange(-d, n + d + 1), w_hi, w_lo)
    if np.any(qh == 0) or not np.all(np.isfinite(qh)):
        raise ValueError("reduced coefficients are undefined at (or too close to) a node")
    ch, cl = qh[:, d:d + n + 1].copy(), ql[:, d:d + n + 1].copy()
    if isinstance(emap, ExtrapolationMap):
        nt = emap.ntilde
        left_cols = slice(0, nt + 1)
        right_cols = slice(n - nt, n + 1)
        left, right = emap.a, emap.b
    else:
        left_cols = right_cols = slice(0, n + 1)
        left, right = emap.left, emap.right
    if d:
        bh, bl = _dd_block(qh[:, :d], ql[:, :d], *_split_map(left))
        ch[:, left_cols], cl[:, left_cols] = dd.add(ch[:, left_cols], cl[:, left_cols], bh, bl)
        bh, bl = _dd_block(qh[:, d + n + 1:], ql[:, d + n + 1:], *_split_map(right))
        ch[:, right_cols], cl[:, right_cols] = dd.add(ch[:, right_cols], cl[:, right_cols], bh, bl)
    h = gridx.h
    c = (ch + cl) / h
    if not with_denominator:
        return c[0] if scalar else c
    Qh, Ql = np.zeros(t.shape), np.zeros(t.shape)
    for r in range(qh.shape[1]):
        Qh, Ql = dd.add(Qh, Ql, qh[:, r], ql[:, r])
    Q = (Qh + Ql) / h
    return (c[0], Q[0]) if scalar else (c, Q)


def reduced_eval(c, y, Q):
    """``sum_j c_j y_j / Q``, vectorized over leading axes of ``c``."""
    Q = np.asarray(Q, dtype=float)
    if np.any(Q == 0):
        raise ZeroDivisionError("reduced form denominator Q(t) vanished")
    return np.asarray(c, dtype=float) @ np.asarray(y, dtype=float) / Q


@dataclass(frozen=True)
class ExtendedInterpolant:
    """Everything needed to evaluate one extended interpolant in float64."""

    grid: EquispacedGrid
    cfg: ExtendedConfig
    gridx: ExtendedGrid
    weights: WeightVector
    emap: ExtrapolationMap

    @classmethod
    def build(cls, grid: EquispacedGrid, cfg: ExtendedConfig) -> ExtendedInterpolant:
        if grid.n != cfg.n:
            raise ConfigError(f"grid has n={grid.n} but config has n={cfg.n}")
        return cls(
            grid,
            cfg,
            extend(grid, cfg.d),
            extended_weights(cfg.n, cfg.d),
            extrapolation_coeffs(cfg.ntilde, cfg.dtilde, cfg.d),
        )

    def extend_data(self, y) -> np.ndarray:
        return extrapolate_matrix(y, self.emap)

    def __call__(self, y, t):
        return extended_eval(self.gridx, self.weights, self.extend_data(y), t)

    def reduced(self, t) -> np.ndarray:
        return reduced_coeffs(self.cfg, self.emap, self.weights, self.gridx, t)

    def Q(self, t) -> np.ndarray:
        return denominator(self.weights, self.gridx, t)
