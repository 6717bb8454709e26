"""Periodic extension of an envelope from [a, b] to a period of 2(b - a).

On ``[b, 2b - a]`` the extension is the two-point Hermite polynomial that
matches ``r`` derivatives of ``f`` at ``b`` and, at the far end ``2b - a``,
the derivatives of ``f`` at ``a`` (the periodic image of ``a``).  With grid
data the derivatives come from one-sided finite differences of order ``q``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import comb, factorial
from typing import Callable, Sequence

import numpy as np

from .exceptions import DomainError, GridError
from .stencils import endpoint_derivative


@dataclass(frozen=True)
class ExtensionParams:
    """Extension smoothness ``r`` and finite-difference order ``q``.

    ``q`` defaults to ``r`` (or 1 when ``r = 0``).
    """

    r: int
    q: int | None = None

    def __post_init__(self):
        if self.r < 0:
            raise DomainError(f"extension order r must be >= 0, got {self.r}")
        if self.q is None:
            object.__setattr__(self, "q", self.r if self.r >= 1 else 1)
        if self.q < 1:
            raise DomainError(f"finite-difference order q must be >= 1, got {self.q}")


@dataclass(frozen=True)
class GridFunction:
    """Samples ``values[j] = f(a + (b - a) j / n)``, ``j = 0..n``."""

    a: float
    b: float
    values: np.ndarray = field(repr=False)

    def __post_init__(self):
        vals = np.asarray(self.values)
        if not vals.dtype.kind == "c":
            vals = vals.astype(float)
        if vals.ndim != 1:
            raise GridError("grid values must be one-dimensional")
        if not self.a < self.b:
            raise GridError(f"interval must satisfy a < b, got [{self.a}, {self.b}]")
        if len(vals) < 3:
            raise GridError(f"a grid needs n >= 2 intervals, got {len(vals) - 1}")
        bad = np.flatnonzero(~np.isfinite(vals))
        if bad.size:
            j = int(bad[0])
            raise GridError(f"non-finite envelope sample at node j={j}, x={float(self.nodes[j]):.17g}")
        object.__setattr__(self, "values", vals)

    @property
    def n(self) -> int:
        return len(self.values) - 1

    @property
    def nodes(self) -> np.ndarray:
        return self.a + (self.b - self.a) * np.arange(len(self.values)) / (len(self.values) - 1)

    @classmethod
    def sample(cls, f: Callable, a: float, b: float, n: int) -> "GridFunction":
        if n < 2:
            raise GridError(f"a grid needs n >= 2 intervals, got {n}")
        x = a + (b - a) * np.arange(n + 1) / n
        return cls(a, b, evaluate(f, x))


@dataclass(frozen=True)
class ExtendedGrid:
    """The 2n samples of the periodic extension on ``x_j = a + (b-a) j/n``."""

    a: float
    b: float
    n: int
    values: np.ndarray = field(repr=False)

    @property
    def period(self) -> float:
        return 2.0 * (self.b - self.a)


def evaluate(f: Callable, x: np.ndarray) -> np.ndarray:
    """Call ``f`` on an array; scalar returns (constant envelopes) are broadcast."""
    out = np.asarray(f(x))
    if out.shape != x.shape:
        out = np.broadcast_to(out, x.shape).copy()
    return out


def hermite_blend(m: int, r: int, t1: float, t2: float, t):
    """Two-point Hermite basis function with unit ``m``-th derivative at ``t1``.

    All derivatives of order ``0..r`` vanish at ``t1`` except the ``m``-th,
    and all of them vanish at ``t2``.
    """
    if not 0 <= m <= r:
        raise DomainError(f"hermite_blend requires 0 <= m <= r, got m={m}, r={r}")
    if t1 == t2:
        raise DomainError("hermite_blend requires distinct nodes t1 != t2")
    t = np.asarray(t, dtype=float)
    u = (t - t1) / (t2 - t1)
    tail = np.zeros_like(t)
    for k in range(r - m, -1, -1):
        tail = tail * u + comb(r + k, r)
    return (t - t1) ** m / factorial(m) * ((t - t2) / (t1 - t2)) ** (r + 1) * tail


def blend_polynomial(a: float, b: float, left_derivs: Sequence, right_derivs: Sequence, r: int):
    """The polynomial on ``[b, 2b - a]`` joining the data at ``b`` to that at ``a``."""
    if len(left_derivs) != r + 1 or len(right_derivs) != r + 1:
        raise DomainError(
            f"need r+1={r + 1} derivatives per side, got "
            f"{len(left_derivs)} (left) and {len(right_derivs)} (right)"
        )
    far = 2.0 * b - a
    left = list(left_derivs)
    right = list(right_derivs)

    def p(x):
        x = np.asarray(x, dtype=float)
        total = np.zeros(x.shape, dtype=np.result_type(*left, *right, float))
        for m in range(r + 1):
            total = total + right[m] * hermite_blend(m, r, b, far, x)
            total = total + left[m] * hermite_blend(m, r, far, b, x)
        return total

    return p


def _assemble(grid: GridFunction, poly) -> ExtendedGrid:
    n = grid.n
    x_ext = grid.a + (grid.b - grid.a) * np.arange(n + 1, 2 * n) / n
    tail = poly(x_ext)
    values = np.concatenate([grid.values, tail.astype(np.result_type(grid.values, tail))])
    return ExtendedGrid(grid.a, grid.b, n, values)


def extend_exact(grid: GridFunction, left_derivs: Sequence, right_derivs: Sequence, r: int) -> ExtendedGrid:
    """Extend with analytically known endpoint derivatives ``f^(m)(a)``, ``f^(m)(b)``."""
    return _assemble(grid, blend_polynomial(grid.a, grid.b, left_derivs, right_derivs, r))


def endpoint_data(grid: GridFunction, params: ExtensionParams):
    """Finite-difference derivatives ``0..r`` at both ends of ``grid``."""
    r, q = params.r, params.q
    if r >= 1 and grid.n < r + q:
        raise GridError(f"extension with r={r}, q={q} needs n >= {r + q}, got n={grid.n}")
    left = [endpoint_derivative(grid, m, q, "left") for m in range(r + 1)]
    right = [endpoint_derivative(grid, m, q, "right") for m in range(r + 1)]
    return left, right


def extend_grid(grid: GridFunction, params: ExtensionParams) -> ExtendedGrid:
    """Extend grid data using finite-difference endpoint derivatives."""
    left, right = endpoint_data(grid, params)
    return extend_exact(grid, left, right, params.r)
