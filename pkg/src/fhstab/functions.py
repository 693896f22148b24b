"""Named test functions, evaluable in float64 and in any MPFR context."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from fhstab.precision import Arith


@dataclass(frozen=True)
class SampleFunction:
    name: str
    f: Callable[[np.ndarray], np.ndarray]
    f_mp: Callable[[object, Arith], object]

    def __call__(self, t):
        return self.f(np.asarray(t, dtype=float))

    def mp(self, t, ar: Arith):
        return self.f_mp(t, ar)


def _sin(k: int) -> SampleFunction:
    return SampleFunction(
        f"sin{k}t" if k != 1 else "sin",
        lambda t: np.sin(k * t),
        lambda t, ar: ar.ctx.sin(ar.mul(ar.num(k), t)),
    )


def monomial(k: int) -> SampleFunction:
    def f_mp(t, ar):
        acc = ar.num(1)
        for _ in range(k):
            acc = ar.mul(acc, t)
        return acc

    return SampleFunction(f"poly:{k}", lambda t: t ** k, f_mp)


def get_function(name: str) -> SampleFunction:
    """``sin2t``, ``sin20t``, ``sin`` or ``poly:k`` (the monomial ``t^k``)."""
    if name.startswith("poly:"):
        k = int(name.split(":", 1)[1])
        if k < 0:
            raise ValueError("monomial degree must be >= 0")
        return monomial(k)
    if name == "sin":
        return _sin(1)
    if name.startswith("sin") and name.endswith("t"):
        return _sin(int(name[3:-1]))
    raise ValueError(f"unknown test function {name!r}")
