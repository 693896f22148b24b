"""Equispaced node grids and their symmetric extensions."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class EquispacedGrid:
    """Nodes ``a + i*h`` for ``i = 0..n`` with ``h = (b - a) / n``."""

    a: float
    b: float
    n: int

    def __post_init__(self):
        if isinstance(self.n, bool) or not isinstance(self.n, (int, np.integer)) or self.n < 1:
            raise ValueError(f"n must be a positive integer, got {self.n!r}")
        if not self.b > self.a:
            raise ValueError(f"need b > a, got a={self.a}, b={self.b}")

    @property
    def h(self) -> float:
        return (self.b - self.a) / self.n

    def node(self, i: int) -> float:
        return self.a + i * self.h

    def nodes(self) -> np.ndarray:
        return self.a + np.arange(self.n + 1) * self.h

    def __len__(self) -> int:
        return self.n + 1


@dataclass(frozen=True)
class ExtendedGrid:
    """A base grid padded with ``d`` extra equispaced nodes on each side.

    Indices run from ``-d`` to ``n + d``; on ``0..n`` the nodes coincide
    bit-for-bit with the base grid.
    """

    base: EquispacedGrid
    d: int

    def __post_init__(self):
        if self.d < 0:
            raise ValueError(f"extension width must be >= 0, got {self.d}")

    @property
    def n(self) -> int:
        return self.base.n

    @property
    def h(self) -> float:
        return self.base.h

    @property
    def indices(self) -> np.ndarray:
        return np.arange(-self.d, self.n + self.d + 1)

    def node(self, i: int) -> float:
        if not -self.d <= i <= self.n + self.d:
            raise IndexError(f"node index {i} outside [{-self.d}, {self.n + self.d}]")
        return self.base.node(i)

    def nodes(self) -> np.ndarray:
        """All nodes, position ``k`` holding index ``k - d``."""
        return self.base.a + self.indices * self.base.h


def make_equispaced(a: float, b: float, n: int) -> EquispacedGrid:
    return EquispacedGrid(float(a), float(b), n)


def extend(grid: EquispacedGrid, d: int) -> ExtendedGrid:
    return ExtendedGrid(grid, int(d))
