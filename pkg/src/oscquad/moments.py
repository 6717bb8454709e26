"""Closed-form oscillatory moments of the supported weight classes.

The moment of a weight ``w`` on ``[a, b]`` for mode ``l`` and frequency ``k``
is

    W_l = int_a^b w(x) exp(i z (x - a)/(b - a)) dx,   z = (b - a) k + pi l,

i.e. ``(b - a) int_0^1 w(a + (b - a) u) exp(i z u) du``.  Every routine below
accepts scalar or array ``ell`` and returns complex values of the same shape.
For ``|z| < DEGENERATE_RADIUS`` the closed forms (which are 0/0 at ``z = 0``)
are replaced by their Maclaurin series in ``z``.

Negative frequencies are not handled here: the moment for ``-k`` is the
conjugate of the moment for ``k`` with ``l -> -l``.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass

import numpy as np

from . import specfun
from .exceptions import DomainError

DEGENERATE_RADIUS = 1.0e-3
_SERIES_TERMS = 10

KINDS = ("unit", "algL", "algR", "algS", "alg2", "logL")


@dataclass(frozen=True)
class WeightSpec:
    """One of the supported weight classes on a generic interval ``[a, b]``.

    ========  =====================================
    ``unit``  ``1``
    ``algL``  ``(x - a)**beta``
    ``algR``  ``(b - x)**beta``
    ``algS``  ``(x - a)**beta (b - x)**beta``
    ``alg2``  ``(x - a)**alpha (b - x)**beta``
    ``logL``  ``log(x - a)``
    ========  =====================================
    """

    kind: str
    alpha: float | None = None
    beta: float | None = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise DomainError(f"unknown weight kind {self.kind!r}; expected one of {KINDS}")
        if self.kind in ("algL", "algR", "algS"):
            if self.beta is None or not self.beta > -1.0:
                raise DomainError(f"beta must exceed -1 (got {self.beta})")
        elif self.kind == "alg2":
            for name, val in (("alpha", self.alpha), ("beta", self.beta)):
                if val is None or not -1.0 < val < 0.0:
                    raise DomainError(f"{name} must lie in (-1, 0) for alg2 (got {val})")

    def __str__(self) -> str:
        if self.kind in ("unit", "logL"):
            return self.kind
        if self.kind == "alg2":
            return f"alg2:alpha={self.alpha!r},beta={self.beta!r}"
        return f"{self.kind}:beta={self.beta!r}"

    def __call__(self, x, a: float, b: float):
        x = np.asarray(x, dtype=float)
        if self.kind == "unit":
            return np.ones_like(x)
        if self.kind == "algL":
            return (x - a) ** self.beta
        if self.kind == "algR":
            return (b - x) ** self.beta
        if self.kind == "algS":
            return ((x - a) * (b - x)) ** self.beta
        if self.kind == "alg2":
            return (x - a) ** self.alpha * (b - x) ** self.beta
        return np.log(x - a)

    @property
    def growth_exponent(self) -> float:
        """Exponent ``gamma`` by which the weight lowers the convergence order."""
        if self.kind in ("algL", "algR", "algS"):
            return max(0.0, -self.beta)
        if self.kind == "alg2":
            return max(-self.alpha, -self.beta)
        return 0.0

    def l1_norm(self, a: float, b: float) -> float:
        """``int_a^b |w(x)| dx``."""
        L = b - a
        if self.kind == "unit":
            return L
        if self.kind in ("algL", "algR"):
            return L ** (1 + self.beta) / (1 + self.beta)
        if self.kind == "algS":
            return L ** (1 + 2 * self.beta) * _beta_fn(1 + self.beta, 1 + self.beta)
        if self.kind == "alg2":
            return L ** (1 + self.alpha + self.beta) * _beta_fn(1 + self.alpha, 1 + self.beta)
        # int_0^L |log x| dx, split at x = 1 when L > 1
        if L <= 1.0:
            return L * (1.0 - math.log(L))
        return 2.0 + L * (math.log(L) - 1.0)


_WEIGHT_RE = re.compile(r"^(unit|logL|algL|algR|algS|alg2)(?::(.*))?$")


def parse_weight(text: str) -> WeightSpec:
    """Parse ``unit``, ``algL:beta=<f>``, ``algR:beta=<f>``, ``algS:beta=<f>``,
    ``alg2:alpha=<f>,beta=<f>`` or ``logL``."""
    m = _WEIGHT_RE.match(text.strip())
    if not m:
        raise DomainError(f"cannot parse weight {text!r}")
    kind, params = m.group(1), m.group(2)
    values: dict[str, float] = {}
    if params:
        for item in params.split(","):
            key, sep, val = item.partition("=")
            key = key.strip()
            if not sep or key not in ("alpha", "beta"):
                raise DomainError(f"bad weight parameter {item!r} in {text!r}")
            try:
                values[key] = float(val)
            except ValueError:
                raise DomainError(f"bad number {val!r} in weight {text!r}") from None
    needed = {"unit": (), "logL": (), "alg2": ("alpha", "beta")}.get(kind, ("beta",))
    if set(values) != set(needed):
        raise DomainError(f"weight {kind!r} takes parameters {needed}, got {tuple(values)}")
    return WeightSpec(kind, values.get("alpha"), values.get("beta"))


def _beta_fn(x: float, y: float) -> float:
    return math.exp(math.lgamma(x) + math.lgamma(y) - math.lgamma(x + y))


def reduced_frequency(interval, k: float, ell) -> np.ndarray:
    a, b = interval
    return (b - a) * k + np.pi * np.asarray(ell, dtype=float)


def _split(z):
    z = np.asarray(z, dtype=float)
    return z, np.abs(z) < DEGENERATE_RADIUS


def _series(z, coeff):
    """sum_j (iz)**j / j! * coeff(j)."""
    iz = 1j * z
    total = np.zeros(z.shape, dtype=complex)
    power = np.ones(z.shape, dtype=complex)
    for j in range(_SERIES_TERMS):
        total = total + power * coeff(j)
        power = power * iz / (j + 1)
    return total


def _finish(out, ell):
    return complex(out) if np.ndim(ell) == 0 else out


def _minus_i(z):
    # -i z with an exact +0.0 real part
    return np.zeros(z.shape) + 1j * (-z)


def _check_k(k):
    if not k >= 0:
        raise DomainError(f"frequency k must be >= 0, got {k}")


def moment_unit(interval, k: float, ell):
    _check_k(k)
    a, b = interval
    L = b - a
    z, small = _split(reduced_frequency(interval, k, ell))
    out = np.empty(z.shape, dtype=complex)
    if small.any():
        out[small] = L * _series(z[small], lambda j: 1.0 / (j + 1))
    big = ~small
    if big.any():
        zb = z[big]
        out[big] = 2.0 * L / zb * np.exp(0.5j * zb) * np.sin(0.5 * zb)
    return _finish(out, ell)


def _unit_interval_alg_left(beta, z):
    """int_0^1 u**beta exp(i z u) du."""
    s = 1.0 + beta
    z, small = _split(z)
    out = np.empty(z.shape, dtype=complex)
    if small.any():
        out[small] = _series(z[small], lambda j: 1.0 / (beta + j + 1))
    big = ~small
    if big.any():
        zb = z[big]
        # (i/z)**s on the principal branch
        prefactor = np.abs(zb) ** (-s) * np.exp(0.5j * np.pi * s * np.sign(zb))
        out[big] = prefactor * specfun.lower_incomplete_gamma(s, _minus_i(zb))
    return out


def moment_alg_left(interval, beta: float, k: float, ell):
    """Moment of ``(x - a)**beta``."""
    if not beta > -1.0:
        raise DomainError(f"beta must exceed -1 (got {beta})")
    _check_k(k)
    a, b = interval
    z = reduced_frequency(interval, k, ell)
    out = (b - a) ** (1.0 + beta) * _unit_interval_alg_left(beta, z)
    return _finish(out, ell)


def moment_alg_right(interval, beta: float, k: float, ell):
    """Moment of ``(b - x)**beta`` via the reflection ``u -> 1 - u``."""
    if not beta > -1.0:
        raise DomainError(f"beta must exceed -1 (got {beta})")
    _check_k(k)
    a, b = interval
    z = reduced_frequency(interval, k, ell)
    left = _unit_interval_alg_left(beta, z)
    out = (b - a) ** (1.0 + beta) * np.exp(1j * z) * np.conj(left)
    return _finish(out, ell)


def moment_alg_symmetric(interval, beta: float, k: float, ell):
    """Moment of ``(x - a)**beta (b - x)**beta`` through J_{beta + 1/2}."""
    if not beta > -1.0:
        raise DomainError(f"beta must exceed -1 (got {beta})")
    _check_k(k)
    a, b = interval
    L = b - a
    nu = 0.5 + beta
    z, small = _split(reduced_frequency(interval, k, ell))
    out = np.empty(z.shape, dtype=complex)
    if small.any():
        # B(beta + 1 + j, beta + 1) by upward recursion in j
        coeffs = [_beta_fn(beta + 1, beta + 1)]
        for j in range(_SERIES_TERMS):
            coeffs.append(coeffs[-1] * (beta + 1 + j) / (2 * beta + 2 + j))
        out[small] = L ** (1 + 2 * beta) * _series(z[small], lambda j: coeffs[j])
    big = ~small
    if big.any():
        zb = z[big]
        # z**(-nu) J_nu(z/2) is even in z, so work with |z|
        az = np.abs(zb)
        bessel = specfun.bessel_j(nu, az / 2.0)
        out[big] = (
            math.sqrt(math.pi) * math.gamma(1 + beta) * L ** (1 + 2 * beta)
            * np.exp(0.5j * zb) * az ** (-nu) * bessel
        )
    return _finish(out, ell)


def moment_alg_two_sided(interval, alpha: float, beta: float, k: float, ell):
    """Moment of ``(x - a)**alpha (b - x)**beta`` through Kummer's M."""
    for name, val in (("alpha", alpha), ("beta", beta)):
        if not val > -1.0:
            raise DomainError(f"{name} must exceed -1 (got {val})")
    _check_k(k)
    a, b = interval
    L = b - a
    z, small = _split(reduced_frequency(interval, k, ell))
    scale = L ** (alpha + beta + 1) * _beta_fn(1 + alpha, 1 + beta)
    out = np.empty(z.shape, dtype=complex)
    if small.any():
        ratios = [1.0]
        for j in range(_SERIES_TERMS):
            ratios.append(ratios[-1] * (alpha + 1 + j) / (alpha + beta + 2 + j))
        out[small] = scale * _series(z[small], lambda j: ratios[j])
    big = ~small
    if big.any():
        zb = z[big]
        out[big] = scale * specfun.kummer_1f1(1 + alpha, 2 + alpha + beta, 1j * zb + 0.0)
    return _finish(out, ell)


def moment_log_left(interval, k: float, ell):
    """Moment of ``log(x - a)``."""
    _check_k(k)
    a, b = interval
    L = b - a
    log_l = math.log(L)
    z, small = _split(reduced_frequency(interval, k, ell))
    out = np.empty(z.shape, dtype=complex)
    if small.any():
        out[small] = L * _series(
            z[small], lambda j: log_l / (j + 1) - 1.0 / (j + 1) ** 2
        )
    big = ~small
    if big.any():
        zb = z[big]
        # gamma + E1(-iz) + log(-iz) evaluated as Ein(-iz)
        bracket = specfun.ein(_minus_i(zb)) + (np.exp(1j * zb) - 1.0) * log_l
        out[big] = 1j * L / (-zb) * bracket
    return _finish(out, ell)


def moment(weight: WeightSpec, interval, k: float, ell):
    """Dispatch to the closed form for ``weight``."""
    kind = weight.kind
    if kind == "unit":
        return moment_unit(interval, k, ell)
    if kind == "algL":
        return moment_alg_left(interval, weight.beta, k, ell)
    if kind == "algR":
        return moment_alg_right(interval, weight.beta, k, ell)
    if kind == "algS":
        return moment_alg_symmetric(interval, weight.beta, k, ell)
    if kind == "alg2":
        return moment_alg_two_sided(interval, weight.alpha, weight.beta, k, ell)
    return moment_log_left(interval, k, ell)


@dataclass(frozen=True)
class MomentTable:
    a: float
    b: float
    k: float
    n: int
    W: np.ndarray

    @property
    def modes(self) -> np.ndarray:
        return np.arange(-self.n, self.n)

    def __getitem__(self, ell: int) -> complex:
        if not -self.n <= ell < self.n:
            raise IndexError(f"mode {ell} outside [-{self.n}, {self.n - 1}]")
        return self.W[ell + self.n]


def moment_table(weight: WeightSpec, interval, k: float, n: int) -> MomentTable:
    """Moments for ``l = -n, ..., n-1``."""
    if n < 2:
        raise DomainError(f"moment table needs n >= 2, got {n}")
    a, b = interval
    W = np.asarray(moment(weight, interval, k, np.arange(-n, n)))
    return MomentTable(a, b, k, n, W)
