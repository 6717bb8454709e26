"""Special functions against mpmath and against closed-form identities."""

import math

import mpmath
import numpy as np
import pytest
from scipy import integrate

from oscquad import specfun
from oscquad.exceptions import DomainError, RangeError

mpmath.mp.dps = 30


def _rel(a, b):
    return abs(a - b) / abs(b)


# -- gamma ---------------------------------------------------------------------


def test_gamma_real_values():
    assert specfun.gamma_real(1.0) == 1.0
    assert specfun.gamma_real(0.5) == pytest.approx(math.sqrt(math.pi), rel=1e-15)
    assert specfun.gamma_real(1.5) == pytest.approx(math.sqrt(math.pi) / 2, rel=1e-15)
    for x in np.linspace(0.05, 5, 37):
        assert specfun.gamma_real(x + 1) == pytest.approx(x * specfun.gamma_real(x), rel=1e-14)
    with pytest.raises(DomainError):
        specfun.gamma_real(0.0)


def _mp_upper(s, z):
    return complex(mpmath.gammainc(s, mpmath.mpc(z.real, z.imag)))


def test_upper_gamma_closed_form():
    assert specfun.upper_incomplete_gamma(1.0, -1j) == pytest.approx(np.exp(1j), rel=1e-14)


def test_upper_gamma_path_integral():
    # Gamma(1/2, -5i) = int t^{-1/2} e^{-t} dt along t = -iu, u from 5 to infinity;
    # the oscillatory ray integral is done by quad's Fourier weight on [5, inf)
    s = 0.5
    amp = lambda u: u ** (s - 1)
    phase = (-1j) ** (s - 1) * (-1j)
    cos_part = integrate.quad(amp, 5, np.inf, weight="cos", wvar=1.0)[0]
    sin_part = integrate.quad(amp, 5, np.inf, weight="sin", wvar=1.0)[0]
    ref = phase * (cos_part + 1j * sin_part)
    assert _rel(specfun.upper_incomplete_gamma(s, -5j), ref) <= 1e-9
    assert _rel(specfun.upper_incomplete_gamma(s, -5j), _mp_upper(s, -5j)) <= 1e-11


def test_upper_gamma_recurrence():
    z = -2j
    lhs = specfun.upper_incomplete_gamma(1.5, z) - 0.5 * specfun.upper_incomplete_gamma(0.5, z)
    rhs = np.exp(0.5 * np.log(z)) * np.exp(-z)
    assert abs(lhs - rhs) <= 1e-11 * abs(rhs)


@pytest.mark.parametrize("s", [0.05, 0.5, 1.0, 4.0 / 3.0, 1.5, 2.0, 3.0])
def test_upper_gamma_vs_mpmath(s):
    ts = np.concatenate([-np.logspace(-3, 8, 40), np.logspace(-3, 8, 40)])
    vals = specfun.upper_incomplete_gamma(s, -1j * ts)
    for t, v in zip(ts, vals):
        assert _rel(v, _mp_upper(s, -1j * t)) <= 1e-11


def test_lower_gamma_small_argument():
    for s in (0.1, 0.5, 1.5):
        for t in (1e-8, 1e-3, 0.5):
            ref = complex(mpmath.gammainc(s, 0, mpmath.mpc(0, -t)))
            assert _rel(specfun.lower_incomplete_gamma(s, -1j * t), ref) <= 1e-13


def test_gamma_branches_overlap():
    # series and continued fraction agree in a band around the switch radius
    r = specfun.SERIES_RADIUS
    for s in (0.2, 0.5, 1.5, 2.5):
        z = -1j * np.linspace(0.8 * r, 1.2 * r, 9)
        series = math.gamma(s) - specfun._lower_series(s, z)
        cf = specfun._upper_cf_value(s, z)
        assert np.max(np.abs(series - cf) / np.abs(cf)) <= 1e-10


def test_gamma_conjugate_symmetry():
    z = np.array([-3j, -40j, -1e5j, 0.5 - 2j])
    np.testing.assert_allclose(
        specfun.upper_incomplete_gamma(0.7, np.conj(z)), np.conj(specfun.upper_incomplete_gamma(0.7, z)), rtol=1e-14
    )


def test_gamma_range_errors():
    with pytest.raises(RangeError):
        specfun.upper_incomplete_gamma(0.0, -1j)
    with pytest.raises(RangeError):
        specfun.upper_incomplete_gamma(0.5, -1.0)
    with pytest.raises(RangeError):
        specfun.upper_incomplete_gamma(0.5, -2e8j)


# -- E1 ------------------------------------------------------------------------


def test_e1_sine_cosine_identity():
    # E1(ix) = -Ci(x) + i(Si(x) - pi/2); on the lower axis the imaginary part flips
    x = 1.0
    ci, si = float(mpmath.ci(x)), float(mpmath.si(x))
    assert _rel(specfun.exp_integral_e1(1j * x), -ci + 1j * (si - math.pi / 2)) <= 1e-13
    assert _rel(specfun.exp_integral_e1(-1j * x), -ci - 1j * (si - math.pi / 2)) <= 1e-13


def test_e1_asymptotic_normalization():
    z = -1e4j
    assert abs(specfun.exp_integral_e1(z) * z * np.exp(z) - 1) <= 1e-3


def test_e1_vs_mpmath_and_symmetry():
    ts = np.concatenate([-np.logspace(-3, 8, 30), np.logspace(-3, 8, 30)])
    vals = specfun.exp_integral_e1(-1j * ts)
    for t, v in zip(ts, vals):
        assert _rel(v, complex(mpmath.e1(mpmath.mpc(0, -t)))) <= 1e-11
    np.testing.assert_allclose(specfun.exp_integral_e1(1j * ts), np.conj(vals), rtol=1e-14)
    with pytest.raises(DomainError):
        specfun.exp_integral_e1(0.0)


def test_ein_matches_definition():
    for t in (1e-6, 0.1, 3.0, 7.0, 100.0, 1e6):
        z = -1j * t
        ref = complex(mpmath.e1(mpmath.mpc(0, -t)) + mpmath.log(mpmath.mpc(0, -t)) + mpmath.euler)
        assert abs(specfun.ein(z) - ref) <= 1e-13 * max(1.0, abs(ref))


# -- Bessel --------------------------------------------------------------------


def test_bessel_examples():
    assert specfun.bessel_j(0.0, 0.0) == 1.0
    assert abs(specfun.bessel_j(0.5, math.pi)) <= 1e-15


def test_bessel_integral_representation():
    nu, x = 0.25, 7.3
    first = integrate.quad(lambda t: math.cos(nu * t - x * math.sin(t)), 0, math.pi, epsabs=1e-14)[0] / math.pi
    second = integrate.quad(lambda t: math.exp(-x * math.sinh(t) - nu * t), 0, 8.0, epsabs=1e-14)[0]
    ref = first - math.sin(nu * math.pi) / math.pi * second
    assert specfun.bessel_j(nu, x) == pytest.approx(ref, rel=1e-10)


@pytest.mark.parametrize("nu", [-0.49, -1 / 3, 0.0, 0.25, 0.5, 1.0, 1.5])
def test_bessel_vs_mpmath(nu):
    xs = np.concatenate([np.linspace(0, 50, 301), np.logspace(np.log10(50), 8, 60)])
    if nu < 0:
        xs = xs[1:]  # J_nu(0) is infinite for negative order
    vals = specfun.bessel_j(nu, xs)
    for x, v in zip(xs, vals):
        ref = float(mpmath.besselj(nu, x))
        if x <= 50:
            # relative error away from zeros; absolute near them
            assert abs(v - ref) <= 1e-10 * max(abs(ref), 1e-3)
        else:
            assert abs(v - ref) <= 1e-10


def test_bessel_half_order_closed_form():
    xs = np.linspace(0.1, 200, 500)
    np.testing.assert_allclose(specfun.bessel_j(0.5, xs), np.sqrt(2 / (np.pi * xs)) * np.sin(xs), atol=1e-13)


def test_bessel_range_errors():
    with pytest.raises(RangeError):
        specfun.bessel_j(-0.5, 1.0)
    with pytest.raises(RangeError):
        specfun.bessel_j(2.0, 1.0)
    with pytest.raises(RangeError):
        specfun.bessel_j(0.0, -1.0)


# -- Kummer --------------------------------------------------------------------


def test_kummer_trivial():
    assert specfun.kummer_1f1(0.5, 7 / 6, 0.0) == 1.0
    for y in (0.3, 5.0, 40.0, 900.0):
        expect = (np.exp(1j * y) - 1) / (1j * y)
        assert _rel(specfun.kummer_1f1(1.0, 2.0, 1j * y), expect) <= 1e-12


def test_kummer_integral_representation():
    a, b, z = 0.5, 7 / 6, 30j
    # substitute u = v^2, 1-u = w^6 style grading by splitting at 1/2
    g = lambda u: np.exp(z * u) * u ** (a - 1) * (1 - u) ** (b - a - 1)
    left = integrate.quad(lambda v: 2 * v * np.exp(z * v * v) * v ** (2 * (a - 1)) * (1 - v * v) ** (b - a - 1), 0, math.sqrt(0.5), complex_func=True, limit=400, epsabs=1e-15)[0]
    p = 1.0 / (b - a)
    right = integrate.quad(lambda w: p * w ** (p - 1) * np.exp(z * (1 - w**p)) * (1 - w**p) ** (a - 1) * w ** (p * (b - a - 1)), 0, 0.5 ** (1 / p), complex_func=True, limit=400, epsabs=1e-15)[0]
    scale = math.gamma(b) / (math.gamma(a) * math.gamma(b - a))
    assert _rel(specfun.kummer_1f1(a, b, z), scale * (left + right)) <= 1e-9


@pytest.mark.parametrize("a,b", [(0.5, 7 / 6), (0.75, 1.0833333333333333), (0.5, 1.0), (0.25, 0.5), (0.9, 1.8)])
def test_kummer_vs_mpmath(a, b):
    ys = np.concatenate([-np.logspace(-3, 6, 45), np.logspace(-3, 6, 45)])
    vals = specfun.kummer_1f1(a, b, 1j * ys)
    for y, v in zip(ys, vals):
        assert _rel(v, complex(mpmath.hyp1f1(a, b, mpmath.mpc(0, y)))) <= 1e-9


@pytest.mark.parametrize("y", [0.5, 12.0, 34.0, 36.0, 400.0, 2e5])
def test_kummer_transform(y):
    a, b = 0.5, 7 / 6
    z = 1j * y
    lhs = specfun.kummer_1f1(a, b, z)
    rhs = np.exp(z) * specfun.kummer_1f1(b - a, b, -z)
    assert _rel(lhs, rhs) <= 1e-9
    assert _rel(specfun.kummer_1f1(a, b, np.conj(z)), np.conj(lhs)) <= 1e-14


def test_kummer_range_errors():
    with pytest.raises(RangeError):
        specfun.kummer_1f1(0.5, 0.5, 1j)
    with pytest.raises(RangeError):
        specfun.kummer_1f1(0.5, 1.0, 1.0)
    with pytest.raises(RangeError):
        specfun.kummer_1f1(0.5, 1.0, 2e6j)


def test_gauss_jacobi_moments():
    x, w = specfun.gauss_jacobi(20, -0.5, 0.3)
    for deg in range(0, 30, 3):
        ref = float(mpmath.quad(lambda t: t**deg * (1 - t) ** -0.5 * (1 + t) ** 0.3, [-1, 0, 1]))
        assert np.dot(w, x**deg) == pytest.approx(ref, rel=1e-12, abs=1e-14)
