"""Filon-type quadrature for oscillatory integrals with singular weights.

Approximates ``int_a^b w(x) f(x) exp(i k x) dx`` from equispaced samples of
``f`` by a Hermite-blended periodic extension, its discrete Fourier
coefficients and closed-form moments of the weight.
"""

from .diagnostics import (
    ConvergenceReport,
    DecayFit,
    GrowthReport,
    coefficient_decay_check,
    convergence_study,
    growth_study,
    weight_growth,
)
from .exceptions import (
    ConditioningError,
    DomainError,
    GridError,
    NumericalError,
    OracleConvergenceError,
    OscquadError,
    RangeError,
)
from .extension import ExtendedGrid, ExtensionParams, GridFunction, extend_exact, extend_grid, hermite_blend
from .moments import MomentTable, WeightSpec, moment, moment_table, parse_weight
from .oracle import OracleConfig, reference_integral
from .quadrature import OscillatoryProblem, QuadratureResult, integrate, integrate_piecewise, transform_phase
from .spectral import FourierCoefficients, discrete_coefficients
from .stencils import Stencil, endpoint_derivative, fd_coefficients

__version__ = "0.1.0"
