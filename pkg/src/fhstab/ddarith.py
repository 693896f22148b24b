"""Vectorized double-double arithmetic (pairs ``hi + lo`` of float64 arrays).

Error-free transformations after Dekker and Knuth; about 106 bits of
working precision, enough to absorb the cancellation in reduced-form
coefficients whose individual terms are many orders of magnitude larger
than their sum.
"""

from __future__ import annotations

import numpy as np

_SPLITTER = 134217729.0  # 2**27 + 1


def two_sum(a, b):
    s = a + b
    bb = s - a
    return s, (a - (s - bb)) + (b - bb)


def fast_two_sum(a, b):
    s = a + b
    return s, b - (s - a)


def split(a):
    c = _SPLITTER * a
    hi = c - (c - a)
    return hi, a - hi


def two_prod(a, b):
    p = a * b
    ah, al = split(a)
    bh, bl = split(b)
    return p, ((ah * bh - p) + ah * bl + al * bh) + al * bl


def add(ah, al, bh, bl):
    s, e = two_sum(ah, bh)
    e = e + (al + bl)
    return fast_two_sum(s, e)


def mul(ah, al, bh, bl):
    p, e = two_prod(ah, bh)
    e = e + (ah * bl + al * bh)
    return fast_two_sum(p, e)


def div(ah, al, bh, bl):
    q1 = ah / bh
    ph, pl = mul(q1, np.zeros_like(q1), bh, bl)
    rh, rl = add(ah, al, -ph, -pl)
    q2 = rh / bh
    return fast_two_sum(q1, q2)


def from_mpfr(values) -> tuple[np.ndarray, np.ndarray]:
    """Split high-precision scalars (mpfr, Fraction, float) into hi/lo arrays."""
    vals = np.asarray(values, dtype=object)
    hi = np.empty(vals.shape)
    lo = np.empty(vals.shape)
    for idx, v in np.ndenumerate(vals):
        h = float(v)
        hi[idx] = h
        lo[idx] = float(v - h)
    return hi, lo
