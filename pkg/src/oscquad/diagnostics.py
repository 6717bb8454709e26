"""Empirical convergence studies, coefficient decay fits and weight growth.

Slope fits only use *resolved* grid sizes.  The moments peak at the mode
``l ~ -k (b - a)/pi`` and, until ``n`` is comfortably past it, aliasing of
that mode dominates the error and the observed rate is meaningless.  The rule
used throughout is

    n >= RESOLUTION_FACTOR * k (b - a) / pi,

i.e. at least four samples per wavelength of ``exp(i k x)``.  Sizes below the
threshold are still computed and reported, just not fitted.
"""

from __future__ import annotations

import io
import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .exceptions import DomainError
from .extension import ExtensionParams, GridFunction, extend_grid
from .moments import WeightSpec, moment
from .quadrature import OscillatoryProblem, integrate_piecewise
from .spectral import discrete_coefficients

RESOLUTION_FACTOR = 2.0
SATURATION_FACTOR = 100.0
EXACT_COEFFICIENT_TOL = 1.0e-14
_EPS = np.finfo(float).eps


def resolution_threshold(k: float, length: float) -> float:
    """Smallest ``n`` treated as past the pre-asymptotic regime."""
    return RESOLUTION_FACTOR * abs(k) * length / math.pi


def fit_slope(x, y) -> float:
    """Least-squares slope of ``y`` against ``x``."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if x.size < 2:
        return float("nan")
    return float(np.polyfit(x, y, 1)[0])


def _check_sizes(ns) -> list[int]:
    ns = [int(n) for n in ns]
    if len(ns) < 2:
        raise DomainError("need >= 2 sizes for a convergence study")
    if any(b <= a for a, b in zip(ns, ns[1:])):
        raise DomainError(f"sizes must be strictly increasing, got {ns}")
    return ns


@dataclass(frozen=True)
class ConvergenceReport:
    ns: list[int]
    errors: list[float]
    fitted_slope: float
    reference: complex
    used: list[bool] = field(default_factory=list)
    saturated: bool = False
    rule: str = ""

    @property
    def log10_inv_n(self) -> np.ndarray:
        return -np.log10(np.asarray(self.ns, dtype=float))

    @property
    def log10_error(self) -> np.ndarray:
        with np.errstate(divide="ignore"):
            return np.log10(np.asarray(self.errors, dtype=float))

    def to_csv(self) -> str:
        buf = io.StringIO()
        buf.write("n,error,log10_inv_n,log10_error\n")
        for n, e, x, y in zip(self.ns, self.errors, self.log10_inv_n, self.log10_error):
            buf.write(f"{n},{e:.17g},{x:.17g},{y:.17g}\n")
        buf.write(f"# slope {self.fitted_slope:.17g}\n")
        if self.rule:
            buf.write(f"# fit {self.rule}\n")
        if self.saturated:
            buf.write("# saturated: every error is at the rounding floor\n")
        return buf.getvalue()


def _pieces(problem) -> list[OscillatoryProblem]:
    if isinstance(problem, OscillatoryProblem):
        return [problem]
    return list(problem)


def convergence_study(
    problem, params: ExtensionParams | None, ns: Sequence[int], reference: complex
) -> ConvergenceReport:
    """Errors ``|I_{k,n} - reference|`` over ``ns`` and the fitted order.

    ``problem`` is a single :class:`OscillatoryProblem` or a list of pieces.
    The slope of ``log(error)`` against ``log(1/n)`` is fitted over sizes that
    are resolved (see module docstring) and whose error exceeds
    ``SATURATION_FACTOR * eps * |reference|``.
    """
    ns = _check_sizes(ns)
    pieces = _pieces(problem)
    errors = [abs(integrate_piecewise(pieces, n, params) - reference) for n in ns]
    floor = SATURATION_FACTOR * _EPS * max(abs(reference), _EPS)
    n_min = max(resolution_threshold(p.k, p.b - p.a) for p in pieces)
    above = [e > floor for e in errors]
    used = [a and n >= n_min for a, n in zip(above, ns)]
    saturated = not any(above)
    xs = [math.log(1.0 / n) for n, u in zip(ns, used) if u]
    ys = [math.log(e) for e, u in zip(errors, used) if u]
    slope = float("nan") if saturated else fit_slope(xs, ys)
    rule = f"n >= {n_min:.6g} and error > {floor:.3g}; {sum(used)} of {len(ns)} sizes used"
    return ConvergenceReport(ns, errors, slope, complex(reference), used, saturated, rule)


@dataclass(frozen=True)
class DecayFit:
    exponent: float
    exact: bool
    fitted_modes: int


def coefficient_decay_check(f, interval, r: int, q: int | None, n: int) -> DecayFit:
    """Fit ``|d_l| ~ |l|**-exponent`` on ``8 <= |l| <= n/4``.

    Coefficients below ``EXACT_COEFFICIENT_TOL`` times the largest one are
    structural zeros or roundoff and are left out of the fit.  If every
    nonzero mode is that small the extension is flagged exact.
    """
    a, b = interval
    grid = GridFunction.sample(f, a, b, n)
    d = np.abs(discrete_coefficients(extend_grid(grid, ExtensionParams(r, q))).coeffs)
    ell = np.arange(-n, n)
    scale = max(d.max(), _EPS)
    tol = EXACT_COEFFICIENT_TOL * scale
    if d[ell != 0].max() <= tol:
        return DecayFit(float("inf"), True, 0)
    sel = (np.abs(ell) >= 8) & (np.abs(ell) <= n // 4) & (d > tol)
    slope = fit_slope(np.log(np.abs(ell[sel])), np.log(d[sel]))
    return DecayFit(-slope, False, int(sel.sum()))


def weight_growth(weight: WeightSpec, interval, k: float, n: int, M: int = 300) -> float:
    """Sum over ``l`` and ``0 < |m| <= M`` of ``|W_{l+2mn} - W_l| / (2|m|-1)^2``."""
    if M < 1:
        raise DomainError(f"M must be >= 1, got {M}")
    if n < 2:
        raise DomainError(f"n must be >= 2, got {n}")
    ell = np.arange(-n, n)
    base = moment(weight, interval, k, ell)
    m = np.concatenate([np.arange(-M, 0), np.arange(1, M + 1)])
    shifted = moment(weight, interval, k, ell[None, :] + 2 * n * m[:, None])
    damp = 1.0 / (2.0 * np.abs(m) - 1.0) ** 2
    return float((np.abs(shifted - base[None, :]) * damp[:, None]).sum())


@dataclass(frozen=True)
class GrowthReport:
    ns: list[int]
    values: list[float]
    fitted_slope: float
    used: list[bool]
    rule: str

    def to_csv(self) -> str:
        lines = ["n,wgrowth"]
        lines += [f"{n},{v:.17g}" for n, v in zip(self.ns, self.values)]
        lines.append(f"# slope {self.fitted_slope:.17g}")
        lines.append(f"# fit {self.rule}")
        return "\n".join(lines) + "\n"


def growth_study(weight: WeightSpec, interval, k: float, ns: Sequence[int], M: int = 300) -> GrowthReport:
    """Weight growth over ``ns`` with the log-log slope fitted on resolved sizes."""
    ns = _check_sizes(ns)
    values = [weight_growth(weight, interval, k, n, M) for n in ns]
    n_min = resolution_threshold(k, interval[1] - interval[0])
    used = [n >= n_min and v > 0 for n, v in zip(ns, values)]
    xs = [math.log(n) for n, u in zip(ns, used) if u]
    ys = [math.log(v) for v, u in zip(values, used) if u]
    rule = f"n >= {n_min:.6g}; {sum(used)} of {len(ns)} sizes used"
    return GrowthReport(ns, values, fit_slope(xs, ys), used, rule)
