"""Usual Floater-Hormann interpolants on equispaced nodes.

Barycentric weights are exact integers.  The blended (local polynomial)
form is kept as an independent oracle for the barycentric one, and the
derivative recurrences feed the extrapolation used by extended
interpolants.
"""

from __future__ import annotations

import math
from fractions import Fraction
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from fhstab.grid import EquispacedGrid
from fhstab.precision import Arith


@dataclass(frozen=True)
class WeightVector:
    """Barycentric weights indexed ``first .. first + len - 1``.

    ``exact`` keeps the integer weights; ``values`` is the float64 copy
    used for evaluation.
    """

    exact: tuple
    first: int = 0
    family: str = "Custom"

    @property
    def values(self) -> np.ndarray:
        return np.array([float(w) for w in self.exact])

    @property
    def last(self) -> int:
        return self.first + len(self.exact) - 1

    @property
    def indices(self) -> np.ndarray:
        return np.arange(self.first, self.last + 1)

    def __len__(self) -> int:
        return len(self.exact)

    def __getitem__(self, i: int):
        if not self.first <= i <= self.last:
            raise IndexError(f"weight index {i} outside [{self.first}, {self.last}]")
        return self.exact[i - self.first]


def fh_weight_ints(n: int, delta: int) -> list[int]:
    if not 0 <= delta <= n:
        raise ValueError(f"need 0 <= delta <= n, got n={n}, delta={delta}")
    out = []
    for i in range(n + 1):
        s = sum(math.comb(delta, i - j) for j in range(max(0, i - delta), min(n - delta, i) + 1))
        out.append(s if (i - delta) % 2 == 0 else -s)
    return out


def fh_weights(n: int, delta: int) -> WeightVector:
    return WeightVector(tuple(fh_weight_ints(n, delta)), 0, f"FH({n},{delta})")


def barycentric(nodes: np.ndarray, w: np.ndarray, y: np.ndarray, t) -> np.ndarray | float:
    """First-form-free barycentric quotient with exact node short-circuit.

    ``t`` may be a scalar or an array.  Raises ``FloatingPointError`` if the
    denominator vanishes away from the nodes.
    """
    scalar = np.ndim(t) == 0
    t = np.atleast_1d(np.asarray(t, dtype=float))
    diff = t[:, None] - nodes[None, :]
    hit = diff == 0
    with np.errstate(divide="ignore", invalid="ignore"):
        c = w[None, :] / diff
        num = c @ y
        den = c.sum(axis=1)
        out = num / den
    rows, cols = np.nonzero(hit)
    out[rows] = y[cols]
    miss = ~hit.any(axis=1)
    if np.any(~np.isfinite(out[miss])):
        raise FloatingPointError("non-finite barycentric value away from the nodes")
    return float(out[0]) if scalar else out


def fh_eval_barycentric(grid: EquispacedGrid, weights: WeightVector, y, t):
    y = np.asarray(y, dtype=float)
    if len(weights) != grid.n + 1 or y.shape != (grid.n + 1,):
        raise ValueError("weights and data must both have n + 1 entries")
    return barycentric(grid.nodes(), weights.values, y, t)


def _newton_eval(xs: Sequence[float], ys: Sequence[float], t: float) -> float:
    coef = list(ys)
    m = len(xs)
    for level in range(1, m):
        for k in range(m - 1, level - 1, -1):
            coef[k] = (coef[k] - coef[k - 1]) / (xs[k] - xs[k - level])
    acc = coef[-1]
    for k in range(m - 2, -1, -1):
        acc = acc * (t - xs[k]) + coef[k]
    return acc


def fh_eval_blended(grid: EquispacedGrid, delta: int, y, t):
    """Blend of local degree-``delta`` interpolants, for checking purposes.

    Each local polynomial is built from Newton divided differences; the
    blending functions are ``(-1)^i / prod_{j=i}^{i+delta} (t - x_j)``.
    """
    if np.ndim(t) > 0:
        return np.array([fh_eval_blended(grid, delta, y, float(s)) for s in np.ravel(t)])
    n = grid.n
    if not 0 <= delta <= n:
        raise ValueError(f"need 0 <= delta <= n, got n={n}, delta={delta}")
    x = [float(v) for v in grid.nodes()]
    y = [float(v) for v in y]
    if len(y) != n + 1:
        raise ValueError("data must have n + 1 entries")
    t = float(t)
    for i, xi in enumerate(x):
        if t == xi:
            return y[i]
    num = 0.0
    den = 0.0
    for i in range(n - delta + 1):
        prod = 1.0
        for j in range(i, i + delta + 1):
            prod *= t - x[j]
        lam = (-1.0) ** i / prod
        num += lam * _newton_eval(x[i:i + delta + 1], y[i:i + delta + 1], t)
        den += lam
    out = num / den
    if not math.isfinite(out):
        raise FloatingPointError("non-finite blended value away from the nodes")
    return out


class _Plain:
    """Python-operator arithmetic in float64, or exact with ``Fraction``."""

    def __init__(self, exact: bool = False):
        self.num = Fraction if exact else float

    def add(self, x, y):
        return x + y

    def sub(self, x, y):
        return x - y

    def mul(self, x, y):
        return x * y

    def div(self, x, y):
        return x / y


@dataclass(frozen=True)
class DerivativeMatrix:
    """``E^(k)`` (or its normalized version ``h^k E^(k) / k!``)."""

    order: int
    entries: np.ndarray
    normalized: bool = False

    def row(self, i: int) -> np.ndarray:
        return self.entries[i]


def derivative_rows(
    weights: Sequence,
    k_max: int,
    rows: Sequence[int] | None = None,
    h=None,
    arith: Arith | None = None,
) -> list[dict[int, list]]:
    """Rows of the derivative recurrence, computed row by row.

    Row ``i`` of order ``k`` depends only on row ``i`` of order ``k - 1``,
    so boundary rows are cheap.  With ``h=None`` the normalized recurrence
    (independent of the spacing) is used, otherwise the physical one with
    node gaps ``(i - j) * h``.  Without ``arith`` the arithmetic is float64,
    or exact rational when every weight is a ``Fraction``.

    Returns ``out[k][i]``, the list of row ``i`` entries of order ``k``.
    """
    m = len(weights)
    if any(w == 0 for w in weights):
        raise ValueError("derivative recurrence needs nonzero weights")
    if k_max < 0:
        raise ValueError("k_max must be >= 0")
    if arith is None:
        exact = all(isinstance(v, Fraction) for v in weights)
        arith = _Plain(exact and (h is None or isinstance(h, (int, Fraction))))
    ar = arith
    rows = list(range(m)) if rows is None else list(rows)
    w = [ar.num(v) for v in weights]
    one, zero = ar.num(1), ar.num(0)
    hh = None if h is None else ar.num(h)

    out = [{i: [one if j == i else zero for j in range(m)] for i in rows}]
    for i in rows:
        ratio = [None if j == i else ar.div(w[j], w[i]) for j in range(m)]
        gap = [None] * m
        for j in range(m):
            if j != i:
                g = ar.num(i - j)
                gap[j] = g if hh is None else ar.mul(g, hh)
        prev = out[0][i]
        for k in range(1, k_max + 1):
            if len(out) <= k:
                out.append({})
            kk = ar.num(1) if hh is None else ar.num(k)
            cur = [None] * m
            diag = zero
            for j in range(m):
                if j == i:
                    continue
                inner = ar.sub(ar.mul(ratio[j], prev[i]), prev[j])
                cur[j] = ar.mul(ar.div(kk, gap[j]), inner)
                diag = ar.sub(diag, cur[j])
            cur[i] = diag
            out[k][i] = cur
            prev = cur
    return out


def derivative_matrices(
    weights, n_local: int | None = None, k_max: int = 1, h=1.0, arith: Arith | None = None
) -> list[DerivativeMatrix]:
    """Full matrices ``E^(0) .. E^(k_max)`` on ``n_local + 1`` equispaced nodes."""
    w = list(weights.exact if isinstance(weights, WeightVector) else weights)
    if n_local is not None and len(w) != n_local + 1:
        raise ValueError(f"expected {n_local + 1} weights, got {len(w)}")
    m = len(w)
    rows = derivative_rows(w, k_max, h=h, arith=arith)
    mats = []
    for k, rk in enumerate(rows):
        ent = np.empty((m, m), dtype=object)
        for i in range(m):
            ent[i, :] = rk[i]
        mats.append(DerivativeMatrix(k, _maybe_float(ent), False))
    return mats


def _maybe_float(ent: np.ndarray) -> np.ndarray:
    if all(isinstance(v, float) for v in ent.flat):
        return ent.astype(float)
    return ent


def normalize_derivative_matrices(E: Sequence[DerivativeMatrix], h) -> list[DerivativeMatrix]:
    out = []
    for mat in E:
        k = mat.order
        if k == 0:
            ent = np.eye(mat.entries.shape[0], dtype=mat.entries.dtype)
        else:
            scale = h ** k / math.factorial(k)
            ent = mat.entries * scale
        out.append(DerivativeMatrix(k, _maybe_float(ent), True))
    return out


def fh_derivative_at_boundary(y, E: DerivativeMatrix, row: int):
    """``sum_j E[row, j] * y_j``: the order-k derivative at node ``row``."""
    r = E.entries[row]
    if len(y) != len(r):
        raise ValueError("data length does not match the derivative matrix")
    acc = 0
    for e, v in zip(r, y):
        acc = acc + e * v
    return acc
