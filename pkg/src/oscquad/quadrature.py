"""Fourier-extension Filon quadrature on an equispaced grid.

The envelope is sampled on ``n + 1`` equispaced nodes, extended to a
``2(b - a)``-periodic grid function, expanded in its ``2n`` discrete Fourier
modes, and each mode is integrated exactly against ``w(x) exp(i k x)``:

    I ~= exp(i k a) sum_{l=-n}^{n-1} d_l W_l.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence, Union

import numpy as np

from .exceptions import DomainError, GridError, NumericalError
from .extension import ExtensionParams, GridFunction, evaluate, extend_grid
from .moments import WeightSpec, moment_table
from .spectral import discrete_coefficients

Envelope = Union[Callable, GridFunction]

STATIONARY_TOL = 1.0e-12


@dataclass(frozen=True)
class OscillatoryProblem:
    """``int_a^b w(x) f(x) exp(i k x) dx`` with ``f`` given as a callable or grid."""

    a: float
    b: float
    k: float
    weight: WeightSpec
    envelope: Envelope

    def __post_init__(self):
        if not self.a < self.b:
            raise DomainError(f"interval must satisfy a < b, got [{self.a}, {self.b}]")
        env = self.envelope
        if isinstance(env, GridFunction) and (env.a, env.b) != (self.a, self.b):
            raise GridError(
                f"envelope grid is on [{env.a}, {env.b}] but the problem is on [{self.a}, {self.b}]"
            )

    @property
    def interval(self) -> tuple[float, float]:
        return (self.a, self.b)

    def samples(self, n: int) -> GridFunction:
        if isinstance(self.envelope, GridFunction):
            if self.envelope.n != n:
                raise GridError(f"envelope grid has n={self.envelope.n}, requested n={n}")
            return self.envelope
        return GridFunction.sample(self.envelope, self.a, self.b, n)

    def scaled(self, factor) -> "OscillatoryProblem":
        """Same problem with the envelope multiplied by ``factor``."""
        env = self.envelope
        if isinstance(env, GridFunction):
            new_env = GridFunction(env.a, env.b, factor * env.values)
        else:
            new_env = lambda x, _f=env: factor * evaluate(_f, np.asarray(x))
        return OscillatoryProblem(self.a, self.b, self.k, self.weight, new_env)


@dataclass(frozen=True)
class QuadratureResult:
    value: complex
    n: int
    params: ExtensionParams


def integrate(problem: OscillatoryProblem, n: int, params: ExtensionParams | None = None) -> QuadratureResult:
    """Approximate the problem's integral with ``n + 1`` envelope samples."""
    params = params or ExtensionParams(0)
    need = max(2, params.r + params.q) if params.r >= 1 else 2
    if n < need:
        raise GridError(f"n={n} too small for r={params.r}, q={params.q}; need n >= {need}")
    grid = problem.samples(n)
    coeffs = discrete_coefficients(extend_grid(grid, params))
    table = moment_table(problem.weight, problem.interval, problem.k, n)
    value = np.exp(1j * problem.k * problem.a) * np.sum(coeffs.coeffs * table.W)
    if not np.isfinite(value):
        raise NumericalError("quadrature produced a non-finite value")
    return QuadratureResult(complex(value), n, params)


def integrate_piecewise(problems: Sequence[OscillatoryProblem], n: int, params: ExtensionParams | None = None) -> complex:
    """Sum of :func:`integrate` over ordered, non-overlapping pieces."""
    pieces = list(problems)
    for left, right in zip(pieces, pieces[1:]):
        if right.a < left.b:
            raise DomainError(
                f"pieces must be ordered and disjoint: [{left.a}, {left.b}] then [{right.a}, {right.b}]"
            )
    return complex(sum((integrate(p, n, params).value for p in pieces), 0j))


def transform_phase(
    f: Callable,
    g_inv: Callable,
    g_prime: Callable,
    source_interval: tuple[float, float],
    target_interval: tuple[float, float],
) -> Callable:
    """Envelope of the linear-phase form of ``int f(t) exp(i k g(t)) dt``.

    With ``y = g(t)`` on a monotone piece the integral becomes
    ``int f(g_inv(y)) / g'(g_inv(y)) exp(i k y) dy`` over
    ``target_interval = (g(a), g(b))``.  For a decreasing phase that interval
    is reversed; the returned envelope then carries the orientation sign, so
    it is always meant to be integrated over the sorted target interval.
    Endpoint blow-ups of ``1/g'`` must be expressed as a weight by the caller.
    ``g'`` counts as vanishing when it is below ``STATIONARY_TOL`` times the
    mean slope ``|g(b) - g(a)| / |b - a|``.
    """
    s0, s1 = sorted(source_interval)
    y0, y1 = target_interval
    sign = 1.0 if y1 >= y0 else -1.0
    span = abs(s1 - s0)
    zero_slope = STATIONARY_TOL * abs(y1 - y0) / span

    def envelope(y):
        y = np.asarray(y, dtype=float)
        t = np.asarray(g_inv(y), dtype=float)
        outside = (t < s0 - 1e-12 * span) | (t > s1 + 1e-12 * span)
        if np.any(outside):
            bad = np.atleast_1d(y)[np.atleast_1d(outside)][0]
            raise DomainError(f"g_inv maps y={float(bad):.17g} outside the source interval {source_interval}")
        deriv = np.asarray(g_prime(t), dtype=float)
        zero = np.abs(deriv) <= zero_slope
        if np.any(zero):
            where = np.atleast_1d(y)[np.atleast_1d(zero)][0]
            raise ZeroDivisionError(f"g' vanishes at y={float(where):.17g} (stationary point)")
        return sign * evaluate(f, t) / deriv

    return envelope
