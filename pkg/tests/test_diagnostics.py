import csv
import io
import math

import numpy as np
import pytest

from oscquad.diagnostics import (
    coefficient_decay_check,
    convergence_study,
    growth_study,
    resolution_threshold,
    weight_growth,
)
from oscquad.exceptions import DomainError
from oscquad.extension import ExtensionParams
from oscquad.moments import WeightSpec
from oscquad.oracle import reference_integral
from oscquad.problems import eg1, eg4
from oscquad.quadrature import OscillatoryProblem

ALG_L = WeightSpec("algL", beta=-0.5)
ALG_2 = WeightSpec("alg2", alpha=-0.25, beta=-2 / 3)


def test_weight_growth_nonnegative_and_monotone_in_m():
    for w in (WeightSpec("unit"), ALG_L, ALG_2, WeightSpec("logL")):
        vals = [weight_growth(w, (0, 1), 10.0, 32, M) for M in (1, 2, 5, 50, 300)]
        assert vals[0] >= 0
        assert all(b >= a for a, b in zip(vals, vals[1:]))


def test_weight_growth_validation():
    with pytest.raises(DomainError):
        weight_growth(ALG_L, (0, 1), 10.0, 32, 0)
    with pytest.raises(DomainError):
        weight_growth(ALG_L, (0, 1), 10.0, 1, 10)


def test_unit_weight_growth_is_subpolynomial():
    # for the unit weight the functional grows only logarithmically
    rep = growth_study(WeightSpec("unit"), (0, 1), 10.0, [8, 16, 32, 64, 128, 256], 300)
    assert rep.fitted_slope <= 0.25
    v = np.array(rep.values)
    assert np.all(np.diff(np.log(v)) / math.log(2) <= 0.25)


@pytest.mark.parametrize("weight,gamma", [(ALG_L, 0.5), (ALG_2, 2 / 3)], ids=["algL", "alg2"])
def test_weight_growth_slope_matches_class(weight, gamma):
    rep = growth_study(weight, (0, 1), 10.0, [16, 32, 64, 128, 256], 300)
    assert abs(rep.fitted_slope - gamma) <= 0.2
    assert all(rep.used)


def test_constant_envelope_is_saturated():
    prob = OscillatoryProblem(0, 1, 5.0, WeightSpec("unit"), lambda x: 1.0)
    ref = (np.exp(5j) - 1) / 5j
    rep = convergence_study(prob, ExtensionParams(2), [8, 16, 32], ref)
    assert rep.saturated
    assert math.isnan(rep.fitted_slope)
    assert "saturated" in rep.to_csv()


@pytest.mark.parametrize("r", [1, 2, 3, 4])
def test_eg1_rates_once_resolved(r):
    bp = eg1(100.0)
    ref = reference_integral(bp.pieces[0])
    ns = [128, 256, 512] if r == 4 else [128, 256, 512, 1024]
    rep = convergence_study(bp.pieces[0], ExtensionParams(r), ns, ref)
    assert abs(rep.fitted_slope - (r + 2)) <= 0.35
    assert all(rep.used)


@pytest.mark.parametrize("r", [1, 2, 3])
def test_eg4_rates_once_resolved(r):
    bp = eg4(100.0)
    ref = reference_integral(bp.pieces[0])
    rep = convergence_study(list(bp.pieces), ExtensionParams(r), [128, 256, 512, 1024], ref)
    assert abs(rep.fitted_slope - (r + 1.5)) <= 0.35


def test_unresolved_sizes_are_reported_but_not_fitted():
    bp = eg1(100.0)
    ref = reference_integral(bp.pieces[0])
    rep = convergence_study(bp.pieces[0], ExtensionParams(2), [32, 64, 128, 256], ref)
    assert resolution_threshold(100.0, 2.0) == pytest.approx(400 / math.pi)
    assert rep.used == [False, False, True, True]
    assert len(rep.errors) == 4


def test_slope_invariant_under_scaling():
    prob = eg4(10.0).pieces[0]
    ref = reference_integral(prob)
    ns = [16, 32, 64, 128]
    base = convergence_study(prob, ExtensionParams(2), ns, ref)
    c = -3.5 + 0.25j
    scaled = convergence_study(prob.scaled(c), ExtensionParams(2), ns, c * ref)
    assert scaled.fitted_slope == pytest.approx(base.fitted_slope, abs=1e-6)


def test_size_validation():
    prob = eg4(10.0).pieces[0]
    with pytest.raises(DomainError, match="2 sizes"):
        convergence_study(prob, ExtensionParams(1), [16], 0j)
    with pytest.raises(DomainError):
        convergence_study(prob, ExtensionParams(1), [32, 16], 0j)


def test_csv_round_trip():
    prob = eg4(10.0).pieces[0]
    rep = convergence_study(prob, ExtensionParams(2), [16, 32, 64], reference_integral(prob))
    text = rep.to_csv()
    rows = list(csv.DictReader(line for line in io.StringIO(text) if not line.startswith("#")))
    assert [int(r["n"]) for r in rows] == rep.ns
    for r in rows:
        e = float(r["error"])
        assert float(r["log10_error"]) == float(f"{math.log10(e):.17g}")
        assert float(r["log10_inv_n"]) == float(f"{-math.log10(int(r['n'])):.17g}")
    assert [float(r["error"]) for r in rows] == rep.errors
    slope_line = [line for line in text.splitlines() if line.startswith("# slope")][0]
    assert float(slope_line.split()[-1]) == rep.fitted_slope


def test_coefficient_decay_examples():
    fit = coefficient_decay_check(np.exp, (0, 1), 3, 3, 512)
    assert abs(fit.exponent - 5) <= 0.4 and not fit.exact
    const = coefficient_decay_check(lambda x: 2.0, (0, 1), 2, 2, 64)
    assert const.exact
    lin = coefficient_decay_check(lambda x: x, (0, 1), 0, None, 512)
    assert abs(lin.exponent - 2) <= 0.4


@pytest.mark.parametrize("r", [1, 2, 4])
def test_coefficient_decay_tracks_r(r):
    fit = coefficient_decay_check(np.cos, (0.2, 1.1), r, r, 1024)
    assert fit.exponent >= r + 2 - 0.3
