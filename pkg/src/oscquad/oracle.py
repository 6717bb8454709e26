"""Brute-force reference integrator for oscillatory integrals with end singularities.

This is deliberately naive and shares no code path with the moment formulas:
fixed-order Gauss-Legendre on panels no longer than a quarter wavelength, and
for each singular endpoint an exponential change of variable

    x - a = h exp(-s)      (or b - x = h exp(-s)),   s in [0, S],

on the end segment of length ``h``.  Under that map ``(x - a)**beta dx``
becomes ``h**(1+beta) exp(-(1+beta) s) ds`` and ``log(x - a) dx`` becomes
``(log h - s) h exp(-s) ds``; both are analytic in ``s``, so the graded
panels in ``s`` converge geometrically.  Panel counts are doubled until two
successive results agree to ``target_rel_error``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from numpy.polynomial.legendre import leggauss

from .exceptions import OracleConvergenceError
from .extension import GridFunction, evaluate

MAX_K_TIMES_LENGTH = 1.0e5
# exp(-TAIL_DECAY) bounds the neglected part of each substituted end segment
TAIL_DECAY = 40.0


@dataclass(frozen=True)
class OracleConfig:
    points_per_panel: int = 30
    max_panels: int = 200_000
    # Gauss panels per unit of the logarithmic end coordinate s
    grading_exponent: float = 3.0
    target_rel_error: float = 1.0e-11

    def __post_init__(self):
        if self.points_per_panel < 1 or self.max_panels < 1:
            raise ValueError("points_per_panel and max_panels must be positive")
        if not self.grading_exponent > 0 or not self.target_rel_error > 0:
            raise ValueError("grading_exponent and target_rel_error must be positive")


def _end_factors(weight):
    """(left, right) endpoint factors: None, ('alg', exponent) or ('log', None)."""
    kind = weight.kind
    if kind == "unit":
        return None, None
    if kind == "algL":
        return ("alg", weight.beta), None
    if kind == "algR":
        return None, ("alg", weight.beta)
    if kind == "algS":
        return ("alg", weight.beta), ("alg", weight.beta)
    if kind == "alg2":
        return ("alg", weight.alpha), ("alg", weight.beta)
    return ("log", None), None


def _factor_value(factor, dist):
    if factor is None:
        return np.ones_like(dist)
    if factor[0] == "log":
        return np.log(dist)
    return dist ** factor[1]


def _tail_length(factor) -> float:
    if factor[0] == "log":
        return TAIL_DECAY + 10.0
    return TAIL_DECAY / (1.0 + factor[1])


class _Integrand:
    """Integrand in the local coordinate ``t = x - a``; ``exp(i k a)`` is applied last."""

    def __init__(self, problem):
        self.a = float(problem.a)
        self.b = float(problem.b)
        self.k = float(problem.k)
        self.f = problem.envelope
        self.left, self.right = _end_factors(problem.weight)

    def regular(self, t):
        L = self.b - self.a
        w = _factor_value(self.left, t) * _factor_value(self.right, L - t)
        return w * evaluate(self.f, self.a + t) * np.exp(1j * self.k * t)

    def end(self, s, h, side):
        """Transformed integrand (including the Jacobian) on an end segment."""
        L = self.b - self.a
        d = h * np.exp(-s)  # distance from the singular endpoint
        if side == "left":
            t = d
            own, other = self.left, self.right
        else:
            t = L - d
            own, other = self.right, self.left
        if own[0] == "log":
            jac = (math.log(h) - s) * d
        else:
            jac = h ** (1.0 + own[1]) * np.exp(-(1.0 + own[1]) * s)
        return jac * _factor_value(other, L - d) * evaluate(self.f, self.a + t) * np.exp(1j * self.k * t)


def _panel_sum(func, edges, nodes, weights):
    lo = edges[:-1, None]
    half = 0.5 * np.diff(edges)[:, None]
    x = lo + half * (nodes[None, :] + 1.0)
    vals = func(x.ravel()).reshape(x.shape)
    contrib = (vals * weights[None, :]) * half
    return contrib.sum(), np.abs(contrib).sum()


def _evaluate_level(integ, cfg, nodes, weights, refine):
    k = integ.k
    L = integ.b - integ.a
    cap = L / 8.0
    if k != 0.0:
        cap = min(cap, 0.5 * math.pi / abs(k))
    lo = cap if integ.left else 0.0
    hi = L - cap if integ.right else L
    total = 0.0 + 0.0j
    magnitude = 0.0
    panels = 0
    if hi > lo:
        count = max(1, math.ceil((hi - lo) / cap - 1e-9)) * refine
        edges = np.linspace(lo, hi, count + 1)
        s, m = _panel_sum(integ.regular, edges, nodes, weights)
        total += s
        magnitude += m
        panels += count
    for side, factor in (("left", integ.left), ("right", integ.right)):
        if factor is None:
            continue
        length = _tail_length(factor)
        count = math.ceil(length * cfg.grading_exponent) * refine
        edges = np.linspace(0.0, length, count + 1)
        s, m = _panel_sum(lambda u: integ.end(u, cap, side), edges, nodes, weights)
        total += s
        magnitude += m
        panels += count
    return total * np.exp(1j * k * integ.a), magnitude, panels


def reference_integral(problem, cfg: OracleConfig | None = None) -> complex:
    """Reference value of ``int_a^b w(x) f(x) exp(i k x) dx`` for a callback envelope."""
    cfg = cfg or OracleConfig()
    if isinstance(problem.envelope, GridFunction) or not callable(problem.envelope):
        raise TypeError("the oracle needs the envelope as a callable, not grid samples")
    if abs(problem.k) * (problem.b - problem.a) > MAX_K_TIMES_LENGTH:
        raise OracleConvergenceError(
            f"k (b - a) = {abs(problem.k) * (problem.b - problem.a):g} exceeds the oracle cap "
            f"{MAX_K_TIMES_LENGTH:g}"
        )
    integ = _Integrand(problem)
    nodes, weights = leggauss(cfg.points_per_panel)
    previous = None
    refine = 1
    while True:
        value, magnitude, panels = _evaluate_level(integ, cfg, nodes, weights, refine)
        if not np.isfinite(value):
            raise OracleConvergenceError("non-finite integrand value encountered")
        if previous is not None:
            floor = 8.0 * np.finfo(float).eps * magnitude
            if abs(value - previous) <= cfg.target_rel_error * abs(value) + floor:
                return complex(value)
        if 2 * panels > cfg.max_panels:
            raise OracleConvergenceError(
                f"no convergence to {cfg.target_rel_error:g} within {cfg.max_panels} panels"
            )
        previous = value
        refine *= 2
