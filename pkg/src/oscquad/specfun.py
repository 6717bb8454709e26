"""Special functions needed by the closed-form oscillatory moments.

All routines work in double precision and are vectorised over their complex
(or real) argument; parameters are real scalars.  They are tuned for the
argument ranges generated by the moment formulas: purely imaginary arguments
for the incomplete gamma, exponential integral and Kummer functions, and
non-negative real arguments for the Bessel function.

Branch convention: every power and logarithm uses the principal branch,
``Arg`` in ``(-pi, pi]``.
"""

from __future__ import annotations

import math

import numpy as np
from scipy.linalg import eigh_tridiagonal

from .exceptions import DomainError, RangeError

EULER_GAMMA = 0.5772156649015329

# |z| at or below which power series are used for Gamma(s, z) and E1(z).
# Above it the Legendre continued fraction converges in < 60 steps.
SERIES_RADIUS = 5.0

Z_MAX = 1.0e8
KUMMER_Z_MAX = 1.0e6
KUMMER_SERIES_RADIUS = 35.0
KUMMER_CANCELLATION_LIMIT = 1.0e3

_TINY = 1.0e-300
_EPS = 1.0e-16


def _as_complex_array(z):
    arr = np.asarray(z, dtype=complex)
    return arr, arr.ndim == 0


def _ret(out, scalar):
    return complex(out) if scalar else out


def gamma_real(x: float) -> float:
    """Euler gamma function for ``x > 0``."""
    x = float(x)
    if not x > 0.0:
        raise DomainError(f"gamma_real requires x > 0, got {x}")
    return math.gamma(x)


def _check_gamma_args(s, z):
    if not 0.0 < s <= 3.0:
        raise RangeError(f"incomplete gamma validated for 0 < s <= 3, got s={s}")
    if np.any(z.real < 0.0):
        raise RangeError("incomplete gamma validated only for Re z >= 0")
    if np.any(np.abs(z) > Z_MAX):
        raise RangeError(f"incomplete gamma validated only for |z| <= {Z_MAX:g}")


def _legendre_cf(s: float, z: np.ndarray) -> np.ndarray:
    """Continued fraction h with Gamma(s, z) = exp(-z) z**s h (modified Lentz)."""
    b = z + 1.0 - s
    c = np.full(z.shape, 1.0 / _TINY, dtype=complex)
    d = 1.0 / b
    h = d.copy()
    active = np.ones(z.shape, dtype=bool)
    for i in range(1, 2000):
        an = -i * (i - s)
        b = b + 2.0
        d = an * d + b
        d = np.where(np.abs(d) < _TINY, _TINY, d)
        c = b + an / c
        c = np.where(np.abs(c) < _TINY, _TINY, c)
        d = 1.0 / d
        delta = d * c
        h = np.where(active, h * delta, h)
        active &= np.abs(delta - 1.0) > _EPS
        if not active.any():
            return h
    raise RangeError("continued fraction for Gamma(s, z) failed to converge")


def _lower_series(s: float, z: np.ndarray) -> np.ndarray:
    """gamma(s, z) = z**s * sum_n (-z)**n / (n! (s + n)) for small |z|."""
    term = np.ones(z.shape, dtype=complex)
    total = np.full(z.shape, 1.0 / s, dtype=complex)
    for n in range(1, 200):
        term = term * (-z / n)
        contrib = term / (s + n)
        total = total + contrib
        if np.all(np.abs(contrib) <= 1e-17 * np.abs(total)):
            break
    return np.exp(s * np.log(z)) * total


def _upper_cf_value(s, z):
    # exp(-z) and z**s kept as separate factors: fusing them into one exp
    # rounds the phase badly for |z| ~ 1e7.
    return np.exp(-z) * np.exp(s * np.log(z)) * _legendre_cf(s, z)


def upper_incomplete_gamma(s: float, z):
    """Upper incomplete gamma function Gamma(s, z) for ``Re z >= 0``.

    Power series of the lower function for ``|z| <= SERIES_RADIUS``,
    continued fraction beyond.  ``Gamma(s, 0) = Gamma(s)``.
    """
    s = float(s)
    z, scalar = _as_complex_array(z)
    _check_gamma_args(s, z)
    out = np.empty(z.shape, dtype=complex)
    small = np.abs(z) <= SERIES_RADIUS
    if small.any():
        out[small] = math.gamma(s) - _lower_series(s, z[small])
    if (~small).any():
        out[~small] = _upper_cf_value(s, z[~small])
    return _ret(out, scalar)


def lower_incomplete_gamma(s: float, z):
    """Lower incomplete gamma function gamma(s, z) = Gamma(s) - Gamma(s, z).

    Evaluated directly from the series where ``|z|`` is small so that the
    difference never cancels.
    """
    s = float(s)
    z, scalar = _as_complex_array(z)
    _check_gamma_args(s, z)
    out = np.empty(z.shape, dtype=complex)
    small = np.abs(z) <= SERIES_RADIUS
    if small.any():
        out[small] = _lower_series(s, z[small])
    if (~small).any():
        out[~small] = math.gamma(s) - _upper_cf_value(s, z[~small])
    return _ret(out, scalar)


def _ein_series(z: np.ndarray) -> np.ndarray:
    term = np.ones(z.shape, dtype=complex)
    total = np.zeros(z.shape, dtype=complex)
    for n in range(1, 200):
        term = term * (-z / n)
        contrib = -term / n
        total = total + contrib
        if np.all(np.abs(contrib) <= 1e-17 * np.abs(total)):
            break
    return total


def _check_e1_args(z):
    if np.any(z == 0):
        raise DomainError("E1 is singular at z = 0")
    if np.any(z.real < 0.0):
        raise RangeError("E1 validated only for Re z >= 0")
    if np.any(np.abs(z) > Z_MAX):
        raise RangeError(f"E1 validated only for |z| <= {Z_MAX:g}")


def exp_integral_e1(z):
    """Exponential integral E1(z) = Gamma(0, z), principal branch, ``Re z >= 0``."""
    z, scalar = _as_complex_array(z)
    _check_e1_args(z)
    out = np.empty(z.shape, dtype=complex)
    small = np.abs(z) <= SERIES_RADIUS
    if small.any():
        zs = z[small]
        out[small] = _ein_series(zs) - EULER_GAMMA - np.log(zs)
    if (~small).any():
        zl = z[~small]
        out[~small] = np.exp(-zl) * _legendre_cf(0.0, zl)
    return _ret(out, scalar)


def ein(z):
    """Entire exponential integral Ein(z) = E1(z) + log z + EULER_GAMMA.

    Small arguments use the series sum (-1)**(n+1) z**n / (n n!), which is
    free of the cancellation in the defining combination.
    """
    z, scalar = _as_complex_array(z)
    if np.any(z.real < 0.0) or np.any(np.abs(z) > Z_MAX):
        raise RangeError("Ein validated only for Re z >= 0, |z| <= Z_MAX")
    out = np.empty(z.shape, dtype=complex)
    small = np.abs(z) <= SERIES_RADIUS
    if small.any():
        out[small] = _ein_series(z[small])
    if (~small).any():
        zl = z[~small]
        out[~small] = np.exp(-zl) * _legendre_cf(0.0, zl) + np.log(zl) + EULER_GAMMA
    return _ret(out, scalar)


# -- Bessel J_nu --------------------------------------------------------------

BESSEL_SERIES_MAX = 8.0
BESSEL_ASYMPTOTIC_MIN = 25.0


def _bessel_series(nu, x):
    half = x / 2.0
    term = np.ones(x.shape) / math.gamma(nu + 1.0)
    total = term.copy()
    q = -(half * half)
    for m in range(1, 80):
        term = term * q / (m * (m + nu))
        total = total + term
        if np.all(np.abs(term) <= 1e-17 * np.abs(total)):
            break
    with np.errstate(divide="ignore"):
        return np.power(half, nu) * total


def _bessel_miller(nu, x):
    """Backward recurrence normalised by (x/2)**nu = sum_k c_k J_{nu+2k}(x)."""
    n_start = int(np.max(x)) + 60
    n_start += n_start % 2
    j_hi = np.zeros(x.shape)
    j_cur = np.full(x.shape, 1e-30)
    norm = np.zeros(x.shape)
    # c_0 = Gamma(nu + 1); c_k = (nu + 2k) Gamma(nu + k) / k! for k >= 1
    coef = [math.gamma(nu + 1.0)]
    g = math.gamma(nu + 1.0)
    for k in range(1, n_start // 2 + 1):
        coef.append((nu + 2 * k) * g)
        g *= (nu + k) / (k + 1)
    for mu in range(n_start, 0, -1):
        if mu % 2 == 0:
            k = mu // 2
            norm = norm + coef[k] * j_cur
        j_lo = (2.0 * (nu + mu) / x) * j_cur - j_hi
        j_hi, j_cur = j_cur, j_lo
        big = np.abs(j_cur) > 1e200
        if big.any():
            j_cur = np.where(big, j_cur * 1e-200, j_cur)
            j_hi = np.where(big, j_hi * 1e-200, j_hi)
            norm = np.where(big, norm * 1e-200, norm)
    norm = norm + coef[0] * j_cur
    return np.power(x / 2.0, nu) * j_cur / norm


def _bessel_hankel(nu, x):
    mu4 = 4.0 * nu * nu
    p = np.ones(x.shape)
    q = np.zeros(x.shape)
    term = np.ones(x.shape)
    prev = np.full(x.shape, np.inf)
    active = np.ones(x.shape, dtype=bool)
    for k in range(1, 200):
        term = term * (mu4 - (2 * k - 1) ** 2) / (k * 8.0 * x)
        mag = np.abs(term)
        active &= (mag < prev) & (mag > 1e-17)
        if not active.any():
            break
        sign = -1.0 if (k // 2) % 2 else 1.0
        if k % 2 == 0:
            p = np.where(active, p + sign * term, p)
        else:
            q = np.where(active, q + sign * term, q)
        prev = mag
    phi = nu * math.pi / 2.0 + math.pi / 4.0
    cos_w = np.cos(x) * math.cos(phi) + np.sin(x) * math.sin(phi)
    sin_w = np.sin(x) * math.cos(phi) - np.cos(x) * math.sin(phi)
    return np.sqrt(2.0 / (math.pi * x)) * (p * cos_w - q * sin_w)


def bessel_j(nu: float, x):
    """Bessel function of the first kind J_nu(x) for -1/2 < nu <= 3/2, x >= 0.

    Ascending series for small x, Miller backward recurrence in the middle
    band, Hankel asymptotic expansion for x >= 25.
    """
    nu = float(nu)
    if not -0.5 < nu <= 1.5:
        raise RangeError(f"bessel_j validated for -1/2 < nu <= 3/2, got nu={nu}")
    arr = np.asarray(x, dtype=float)
    scalar = arr.ndim == 0
    arr = np.atleast_1d(arr)
    if np.any(arr < 0.0) or np.any(arr > Z_MAX) or np.any(~np.isfinite(arr)):
        raise RangeError("bessel_j validated only for 0 <= x <= 1e8")
    out = np.empty(arr.shape)
    lo = arr <= BESSEL_SERIES_MAX
    hi = arr >= BESSEL_ASYMPTOTIC_MIN
    mid = ~(lo | hi)
    if lo.any():
        out[lo] = _bessel_series(nu, arr[lo])
    if mid.any():
        out[mid] = _bessel_miller(nu, arr[mid])
    if hi.any():
        out[hi] = _bessel_hankel(nu, arr[hi])
    return float(out[0]) if scalar else out


# -- Kummer M(a, b, z) --------------------------------------------------------


def _kummer_series(a, b, z):
    term = np.ones(z.shape, dtype=complex)
    total = np.ones(z.shape, dtype=complex)
    # compensated (Kahan) summation
    comp = np.zeros(z.shape, dtype=complex)
    biggest = np.ones(z.shape)
    for n in range(0, 1000):
        term = term * ((a + n) / (b + n)) * z / (n + 1)
        y = term - comp
        t = total + y
        comp = (t - total) - y
        total = t
        biggest = np.maximum(biggest, np.abs(term))
        if np.all(np.abs(term) <= 1e-17 * np.abs(total)):
            break
    return total, biggest


_JACOBI_CACHE: dict = {}


def gauss_jacobi(nodes: int, alpha: float, beta: float):
    """Golub-Welsch nodes and weights for the weight (1-x)**alpha (1+x)**beta."""
    key = (nodes, alpha, beta)
    if key in _JACOBI_CACHE:
        return _JACOBI_CACHE[key]
    n = np.arange(nodes, dtype=float)
    ab = alpha + beta
    with np.errstate(divide="ignore", invalid="ignore"):
        diag = (beta**2 - alpha**2) / ((2 * n + ab) * (2 * n + ab + 2))
    diag[0] = (beta - alpha) / (ab + 2)
    k = np.arange(1, nodes, dtype=float)
    with np.errstate(divide="ignore", invalid="ignore"):
        off2 = (
            4 * k * (k + alpha) * (k + beta) * (k + ab)
            / ((2 * k + ab) ** 2 * (2 * k + ab + 1) * (2 * k + ab - 1))
        )
    # first entry in cancelled form: the generic one is 0/0 when alpha + beta = -1
    off2[0] = 4 * (1 + alpha) * (1 + beta) / ((2 + ab) ** 2 * (3 + ab))
    off = np.sqrt(off2)
    x, vecs = eigh_tridiagonal(diag, off)
    mu0 = math.exp(
        (ab + 1) * math.log(2.0)
        + math.lgamma(alpha + 1) + math.lgamma(beta + 1) - math.lgamma(ab + 2)
    )
    rule = (x, mu0 * vecs[0] ** 2)
    _JACOBI_CACHE[key] = rule
    return rule


def _kummer_integral(a, b, z, nodes=48):
    """Gauss-Jacobi evaluation of the Euler integral for M(a, b, z), |z| <= 35."""
    x, w = gauss_jacobi(nodes, b - a - 1.0, a - 1.0)
    u = (1.0 + x) / 2.0
    vals = np.exp(np.multiply.outer(z, u)) @ w
    scale = math.exp(
        math.lgamma(b) - math.lgamma(a) - math.lgamma(b - a) + (1.0 - b) * math.log(2.0)
    )
    return scale * vals


def _kummer_asymptotic(a, b, z):
    s1 = np.ones(z.shape, dtype=complex)
    s2 = np.ones(z.shape, dtype=complex)
    t1 = np.ones(z.shape, dtype=complex)
    t2 = np.ones(z.shape, dtype=complex)
    on1 = np.ones(z.shape, dtype=bool)
    on2 = np.ones(z.shape, dtype=bool)
    for n in range(0, 400):
        nt1 = t1 * (a + n) * (a - b + 1 + n) / ((n + 1) * (-z))
        nt2 = t2 * (b - a + n) * (1 - a + n) / ((n + 1) * z)
        on1 &= (np.abs(nt1) < np.abs(t1)) & (np.abs(nt1) > 1e-17)
        on2 &= (np.abs(nt2) < np.abs(t2)) & (np.abs(nt2) > 1e-17)
        if not (on1.any() or on2.any()):
            break
        s1 = np.where(on1, s1 + nt1, s1)
        s2 = np.where(on2, s2 + nt2, s2)
        t1 = np.where(on1, nt1, t1)
        t2 = np.where(on2, nt2, t2)
    gb = math.gamma(b)
    first = (gb / math.gamma(b - a)) * np.exp(-a * np.log(-z)) * s1
    second = (gb / math.gamma(a)) * np.exp(z) * np.exp((a - b) * np.log(z)) * s2
    return first + second


def kummer_1f1(a: float, b: float, z):
    """Confluent hypergeometric function M(a, b, z) for imaginary z.

    Requires ``a > 0`` and ``b - a > 0``.  Maclaurin series for small ``|z|``
    (falling back to the Euler integral by Gauss-Jacobi quadrature when the
    series cancels), large-``|z|`` asymptotic expansion beyond
    ``KUMMER_SERIES_RADIUS``.
    """
    a = float(a)
    b = float(b)
    if not a > 0.0 or not b - a > 0.0:
        raise RangeError(f"kummer_1f1 requires a > 0 and b > a, got a={a}, b={b}")
    z, scalar = _as_complex_array(z)
    mag = np.abs(z)
    if np.any(np.abs(z.real) > 1e-12 * np.maximum(1.0, mag)):
        raise RangeError("kummer_1f1 validated only on the imaginary axis")
    if np.any(mag > KUMMER_Z_MAX):
        raise RangeError(f"kummer_1f1 validated only for |z| <= {KUMMER_Z_MAX:g}")
    out = np.empty(z.shape, dtype=complex)
    near = mag <= KUMMER_SERIES_RADIUS
    if near.any():
        zn = z[near]
        vals, biggest = _kummer_series(a, b, zn)
        bad = biggest > KUMMER_CANCELLATION_LIMIT * np.abs(vals)
        if bad.any():
            vals[bad] = _kummer_integral(a, b, zn[bad])
        out[near] = vals
    if (~near).any():
        out[~near] = _kummer_asymptotic(a, b, z[~near])
    return _ret(out, scalar)
