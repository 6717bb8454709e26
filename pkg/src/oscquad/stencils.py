"""One-sided finite-difference stencils for endpoint derivatives.

The coefficients ``c_l`` of a forward stencil for the ``m``-th derivative with
accuracy order ``q`` solve the Taylor system

    sum_{l=0}^{m+q-1} c_l l**j = m! delta_{j,m},   j = 0, ..., m+q-1,

which is solved exactly over the rationals.  The same table serves the
backward direction; the sign ``(-1)**m`` is applied at the use site.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Literal

import numpy as np

from .exceptions import ConditioningError, DomainError, GridError

MAX_STENCIL_WIDTH = 16

Direction = Literal["forward", "backward"]


@dataclass(frozen=True)
class Stencil:
    m: int
    q: int
    direction: Direction
    coefficients: tuple[float, ...]
    exact: tuple[Fraction, ...]

    def __len__(self) -> int:
        return len(self.coefficients)


def _solve_rational(matrix: list[list[Fraction]], rhs: list[Fraction]) -> list[Fraction]:
    size = len(rhs)
    aug = [row[:] + [rhs[i]] for i, row in enumerate(matrix)]
    for col in range(size):
        pivot = next(r for r in range(col, size) if aug[r][col] != 0)
        aug[col], aug[pivot] = aug[pivot], aug[col]
        piv = aug[col][col]
        aug[col] = [v / piv for v in aug[col]]
        for r in range(size):
            if r != col and aug[r][col] != 0:
                factor = aug[r][col]
                aug[r] = [v - factor * p for v, p in zip(aug[r], aug[col])]
    return [aug[r][size] for r in range(size)]


@lru_cache(maxsize=None)
def _taylor_coefficients(m: int, q: int) -> tuple[Fraction, ...]:
    width = m + q
    matrix = [[Fraction(ell) ** j for ell in range(width)] for j in range(width)]
    rhs = [Fraction(factorial(m)) if j == m else Fraction(0) for j in range(width)]
    return tuple(_solve_rational(matrix, rhs))


def fd_coefficients(m: int, q: int, direction: Direction = "forward") -> Stencil:
    """Minimal-width one-sided stencil of accuracy ``q`` for the ``m``-th derivative."""
    if m < 1:
        raise DomainError(f"derivative order must be >= 1 (m=0 is the identity), got {m}")
    if q < 1:
        raise DomainError(f"accuracy order must be >= 1, got {q}")
    if m + q > MAX_STENCIL_WIDTH:
        raise ConditioningError(
            f"stencil width m+q={m + q} exceeds the conditioning cap {MAX_STENCIL_WIDTH}"
        )
    if direction not in ("forward", "backward"):
        raise ValueError(f"direction must be 'forward' or 'backward', got {direction!r}")
    exact = _taylor_coefficients(m, q)
    return Stencil(m, q, direction, tuple(float(c) for c in exact), exact)


def endpoint_derivative(grid, m: int, q: int, side: Literal["left", "right"]):
    """Order-``q`` approximation of the ``m``-th derivative at an end of ``grid``.

    ``side="left"`` applies the forward stencil at ``a``, ``side="right"`` the
    backward stencil at ``b``.  The step is ``h = (b - a)/n``, so the result is
    scaled by ``h**-m`` (``(-h)**-m`` on the right).
    """
    values = np.asarray(grid.values)
    if m == 0:
        return values[0] if side == "left" else values[-1]
    if side not in ("left", "right"):
        raise ValueError(f"side must be 'left' or 'right', got {side!r}")
    stencil = fd_coefficients(m, q, "forward" if side == "left" else "backward")
    n = grid.n
    if n < m + q - 1:
        raise GridError(
            f"derivative m={m} with accuracy q={q} needs n >= {m + q - 1} intervals, got n={n}"
        )
    c = np.array(stencil.coefficients)
    h = (grid.b - grid.a) / n
    if side == "left":
        return (c @ values[: m + q]) / h**m
    return (c @ values[::-1][: m + q]) / (-h) ** m
