import math

import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from renyixent import closed_form as cf
from renyixent import distributions as D
from renyixent.closed_form import SHANNON, AlphaOrder
from renyixent.errors import ConstraintViolated, FamilyMismatch, NaturalParamOutOfDomain
from renyixent.verify import PARAM_GRID

# Quadrature (univariate) or Gauss-Legendre cubature (bivariate Gaussian)
# values for the first parameter pair of every family, computed once with
# renyixent.oracle and frozen here.  Keys are (family, measure, alpha).
ORACLE = {
    ('beta', 'renyi', 0.5): 0.3679689505574908,
    ('beta', 'natural', 0.5): -0.02053885054554616,
    ('beta', 'renyi', 2.0): -0.16111934914715298,
    ('beta', 'natural', 2.0): 0.4212134650727736,
    ('beta', 'shannon', None): 0.06168275008081532,
    ('chi', 'renyi', 0.5): 1.2362538365554654,
    ('chi', 'natural', 0.5): 1.176959475906341,
    ('chi', 'renyi', 2.0): 0.8690817770302692,
    ('chi', 'natural', 2.0): 0.9189385331998277,
    ('chi', 'shannon', None): 1.027787092813972,
    ('chi2', 'renyi', 0.5): 2.8295778328435333,
    ('chi2', 'natural', 0.5): 2.579044251375018,
    ('chi2', 'renyi', 2.0): 2.02055002385669,
    ('chi2', 'natural', 2.0): 2.2433421745146336,
    ('chi2', 'shannon', None): 2.3609727753754663,
    ('chi_scaled', 'renyi', 0.5): 1.28459369719823,
    ('chi_scaled', 'natural', 0.5): 1.3713998294945613,
    ('chi_scaled', 'renyi', 2.0): 1.1627475999811452,
    ('chi_scaled', 'natural', 2.0): 1.1210207437189852,
    ('chi_scaled', 'shannon', None): 1.2279675278934512,
    ('exponential', 'renyi', 0.5): 0.5753641449035608,
    ('exponential', 'natural', 0.5): 0.8109302162163289,
    ('exponential', 'renyi', 2.0): 0.40546510810816533,
    ('exponential', 'natural', 2.0): 0.2876820724517814,
    ('exponential', 'shannon', None): 0.5000000000000039,
    ('gamma', 'renyi', 0.5): 3.347952867143341,
    ('gamma', 'natural', 0.5): 2.60268968544832,
    ('gamma', 'renyi', 2.0): 2.602689685444383,
    ('gamma', 'natural', 2.0): 3.7534179752515073,
    ('gamma', 'shannon', None): 2.9270200520429324,
    ('gaussian', 'renyi', 0.5): 1.88652752926976,
    ('gaussian', 'natural', 0.5): 1.837643898259476,
    ('gaussian', 'renyi', 2.0): 1.6349113442053942,
    ('gaussian', 'natural', 2.0): 1.7426864930447081,
    ('gaussian', 'shannon', None): 1.7655121234846456,
    ('gumbel', 'renyi', 0.5): 2.348711852076809,
    ('gumbel', 'natural', 0.5): 2.136997854680074,
    ('gumbel', 'renyi', 2.0): 1.6854151493906167,
    ('gumbel', 'natural', 2.0): 1.8971291467873592,
    ('gumbel', 'shannon', None): 1.9240137386026537,
    ('halfnormal', 'renyi', 0.5): 0.8600470153764808,
    ('halfnormal', 'natural', 0.5): 0.9778300510328648,
    ('halfnormal', 'renyi', 2.0): 0.7750974969787823,
    ('halfnormal', 'natural', 2.0): 0.7162059791505907,
    ('halfnormal', 'shannon', None): 0.8223649429247002,
    ('laplace', 'renyi', 0.5): 1.9095425042262926,
    ('laplace', 'natural', 0.5): 2.1202635369418434,
    ('laplace', 'renyi', 2.0): 1.6094379124340983,
    ('laplace', 'natural', 2.0): 1.5040773967763226,
    ('laplace', 'shannon', None): 1.7652789558459998,
    ('maxwell', 'renyi', 0.5): 1.3726414322632725,
    ('maxwell', 'natural', 0.5): 1.327212561939597,
    ('maxwell', 'renyi', 2.0): 1.1672077615741139,
    ('maxwell', 'natural', 2.0): 1.271505010683473,
    ('maxwell', 'shannon', None): 1.2708770304186474,
    ('mvgaussian', 'renyi', 0.5): 3.2649567001064135,
    ('mvgaussian', 'natural', 0.5): 3.373095202642507,
    ('mvgaussian', 'renyi', 2.0): 2.9057565235802176,
    ('mvgaussian', 'natural', 2.0): 2.902675011709765,
    ('pareto', 'renyi', 0.5): 1.5277939233935913,
    ('pareto', 'natural', 0.5): 1.8000582720472684,
    ('pareto', 'renyi', 2.0): 0.5500463369192707,
    ('pareto', 'natural', 2.0): 0.4700036292422054,
    ('pareto', 'shannon', None): 0.9435231153523989,
    ('rayleigh', 'renyi', 0.5): 1.1846586018202343,
    ('rayleigh', 'natural', 0.5): 1.2174921190789212,
    ('rayleigh', 'renyi', 2.0): 1.0755534900774646,
    ('rayleigh', 'natural', 2.0): 1.1016114906469705,
    ('rayleigh', 'shannon', None): 1.1351814227307389,
}


@pytest.mark.parametrize("family, measure, alpha", sorted(ORACLE, key=str))
def test_closed_form_matches_frozen_oracle(family, measure, alpha):
    f1, f2 = PARAM_GRID[family][0]
    if measure == "shannon":
        value = cf.shannon_xent(f1, f2).value
    elif measure == "renyi":
        value = cf.renyi_xent(f1, f2, alpha).value
    else:
        value = cf.natural_renyi_xent(f1, f2, alpha).value
    assert value == pytest.approx(ORACLE[family, measure, alpha], rel=1e-8, abs=1e-10)


# -- worked examples --------------------------------------------------------


def test_exponential_renyi_example():
    res = cf.renyi_xent(D.Exponential(1), D.Exponential(1), 2)
    assert res.value == pytest.approx(math.log(2), abs=1e-12)
    assert res.diagnostics["λ_h > 0"] == pytest.approx(2.0)


def test_gaussian_renyi_example():
    value = cf.renyi_xent(D.Gaussian(0, 1), D.Gaussian(1, 1), 2).value
    assert value == pytest.approx(0.5 * (math.log(2 * math.pi) + math.log(2) + 0.5), abs=1e-12)
    assert value == pytest.approx(1.515513, abs=1e-6)


@pytest.mark.parametrize("var", [0.5, 1.0, 3.0])
def test_gaussian_self_renyi_two(var):
    f = D.Gaussian(0, var)
    expected = 0.5 * math.log(2 * math.pi * var) + math.log(2) / 2
    assert cf.renyi_xent(f, f, 2).value == pytest.approx(expected, abs=1e-12)


def test_exponential_constraint_example():
    with pytest.raises(ConstraintViolated) as info:
        cf.renyi_xent(D.Exponential(1), D.Exponential(3), 0.5)
    assert info.value.name == "λ_h > 0"
    assert info.value.value == pytest.approx(-0.5)


def test_natural_exponential_equal_rates():
    # the integral gives D_2(p||p) + h_2(p) = 0 + ln 2 for the unit-rate exponential
    value = cf.natural_renyi_xent(D.Exponential(1), D.Exponential(1), 2).value
    assert value == pytest.approx(math.log(2), abs=1e-12)


def test_natural_gaussian_unit_shift():
    # D_2 = (mu1 - mu2)^2 = 1 and h_2 = ln(2 sqrt(pi)) for unit variances
    value = cf.natural_renyi_xent(D.Gaussian(0, 1), D.Gaussian(1, 1), 2).value
    assert value == pytest.approx(1 + math.log(2 * math.sqrt(math.pi)), abs=1e-12)
    assert value == pytest.approx(2.2655121234846454, abs=1e-12)


def test_shannon_examples():
    assert cf.shannon_xent(D.Gaussian(0, 1), D.Gaussian(0, 1)).value == pytest.approx(
        0.5 * math.log(2 * math.pi * math.e), abs=1e-12)
    assert cf.shannon_xent(D.Exponential(1), D.Exponential(2)).value == pytest.approx(2 - math.log(2), abs=1e-12)


@pytest.mark.parametrize("lam", [0.5, 1.0, 4.0])
def test_exponential_renyi_entropy(lam):
    assert cf.renyi_entropy(D.Exponential(lam), 2).value == pytest.approx(math.log(2) - math.log(lam), abs=1e-12)


@pytest.mark.parametrize("alpha", [0.3, 0.5, 2.0, 3.0])
def test_gaussian_renyi_entropy(alpha):
    var = 1.7
    expected = 0.5 * math.log(2 * math.pi * var) + math.log(alpha) / (2 * (alpha - 1))
    assert cf.renyi_entropy(D.Gaussian(0.4, var), alpha).value == pytest.approx(expected, abs=1e-12)


# -- generic engines --------------------------------------------------------


@pytest.mark.parametrize("alpha", [0.5, 1.5, 2.0, 3.0])
def test_generic_engine_unit_carrier(alpha):
    f1, f2 = D.Exponential(1.5), D.Exponential(2.0)
    assert cf.generic_renyi_xent(f1, f2, alpha).value == pytest.approx(cf.renyi_xent(f1, f2, alpha).value, abs=1e-12)
    assert cf.generic_natural_renyi_xent(f1, f2, alpha).value == pytest.approx(
        cf.natural_renyi_xent(f1, f2, alpha).value, abs=1e-12)
    g1, g2 = D.Gaussian(0, 1), D.Gaussian(0, 2)
    assert cf.generic_renyi_xent(g1, g2, alpha).value == pytest.approx(cf.renyi_xent(g1, g2, alpha).value, abs=1e-10)
    assert cf.generic_natural_renyi_xent(g1, g2, 2).value == pytest.approx(
        cf.natural_renyi_xent(g1, g2, 2).value, abs=1e-10)


def test_generic_engine_beta_quadrature_carrier():
    f1, f2 = D.Beta(2, 3), D.Beta(3, 2)
    assert cf.generic_renyi_xent(f1, f2, 1.5).value == pytest.approx(cf.renyi_xent(f1, f2, 1.5).value, abs=1e-8)


def test_generic_natural_gamma():
    from renyixent.oracle import quad_natural_renyi_xent

    f1, f2 = D.Gamma(2, 1), D.Gamma(3, 2)
    assert cf.generic_natural_renyi_xent(f1, f2, 1.5).value == pytest.approx(
        quad_natural_renyi_xent(f1, f2, 1.5), rel=1e-7)


@pytest.mark.parametrize("family", ["chi", "chi2", "gumbel", "maxwell", "rayleigh"])
@pytest.mark.parametrize("alpha", [0.5, 2.0])
def test_analytic_carrier_matches_quadrature(family, alpha):
    from renyixent.oracle import carrier_expectation

    f = PARAM_GRID[family][0][0]
    assert cf.analytic_carrier_expectation(f, alpha - 1) == pytest.approx(
        carrier_expectation(f, alpha - 1), rel=1e-9)


def test_generic_engine_domain_error():
    with pytest.raises(NaturalParamOutOfDomain):
        cf.generic_renyi_xent(D.Exponential(1), D.Exponential(3), 0.5)


# -- structural properties ---------------------------------------------------


def test_mismatched_families():
    with pytest.raises(FamilyMismatch):
        cf.renyi_xent(D.Gaussian(0, 1), D.Laplace(1), 2)
    with pytest.raises(FamilyMismatch):
        cf.renyi_xent(D.Pareto(1, 2), D.Pareto(2, 2), 2)
    with pytest.raises(FamilyMismatch):
        cf.renyi_xent(D.Gumbel(0, 1), D.Gumbel(0, 2), 2)


def test_alpha_order_parsing():
    assert AlphaOrder.parse("shannon") is SHANNON
    assert AlphaOrder.parse("1") is SHANNON
    assert AlphaOrder.parse("2").value == 2.0
    for bad in (0, -1, 1.0, float("nan"), float("inf")):
        with pytest.raises(ValueError):
            AlphaOrder(bad)


def test_shannon_alpha_routes_to_shannon():
    f1, f2 = D.Gamma(2, 1), D.Gamma(3, 2)
    assert cf.renyi_xent(f1, f2, SHANNON).value == cf.shannon_xent(f1, f2).value
    assert cf.natural_renyi_xent(f1, f2, "shannon").value == cf.shannon_xent(f1, f2).value


def test_univariate_gaussian_agrees_with_one_dimensional_multivariate():
    g1, g2 = D.Gaussian(0.3, 1.2), D.Gaussian(-0.5, 2.1)
    m1 = D.MultivariateGaussian([0.3], [[1.2]])
    m2 = D.MultivariateGaussian([-0.5], [[2.1]])
    for a in (0.5, 2.0, 3.0):
        assert cf.renyi_xent(m1, m2, a).value == pytest.approx(cf.renyi_xent(g1, g2, a).value, abs=1e-12)
        assert cf.natural_renyi_xent(m1, m2, a).value == pytest.approx(
            cf.natural_renyi_xent(g1, g2, a).value, abs=1e-12)
    assert cf.shannon_xent(m1, m2).value == pytest.approx(cf.shannon_xent(g1, g2).value, abs=1e-12)


def test_result_serialises():
    res = cf.renyi_xent(*PARAM_GRID["mvgaussian"][0], 2)
    d = res.to_dict()
    assert d["measure"] == "renyi" and d["alpha"] == "2.0"
    import json

    json.dumps(d)


alphas = st.floats(0.1, 5.0).filter(lambda a: abs(a - 1) > 1e-3)
families = st.sampled_from(sorted(PARAM_GRID))


@settings(max_examples=150, deadline=None)
@given(families, st.integers(0, 4), st.integers(0, 1), alphas)
def test_self_reduction(family, i, j, alpha):
    f = PARAM_GRID[family][i][j]
    try:
        h = cf.renyi_entropy(f, alpha).value
    except ConstraintViolated:
        with pytest.raises(ConstraintViolated):
            cf.natural_renyi_xent(f, f, alpha)
        return
    assert cf.renyi_xent(f, f, alpha).value == pytest.approx(h, abs=1e-10)
    assert cf.natural_renyi_xent(f, f, alpha).value == pytest.approx(h, abs=1e-10)


@settings(max_examples=100, deadline=None)
@given(families, st.integers(0, 4), st.sampled_from([-1e-4, 1e-4]))
def test_shannon_continuity(family, i, step):
    f1, f2 = PARAM_GRID[family][i]
    ref = cf.shannon_xent(f1, f2).value
    assert abs(cf.renyi_xent(f1, f2, 1 + step).value - ref) <= 1e-3
    assert abs(cf.natural_renyi_xent(f1, f2, 1 + step).value - ref) <= 1e-3


@settings(max_examples=100, deadline=None)
@given(st.floats(0.2, 5), st.floats(0.2, 5), alphas)
def test_natural_divergence_is_nonnegative(lam1, lam2, alpha):
    # natural cross-entropy minus entropy is the Rényi divergence, which is >= 0
    f1, f2 = D.Exponential(lam1), D.Exponential(lam2)
    try:
        value = cf.natural_renyi_xent(f1, f2, alpha).value
    except ConstraintViolated:
        assume(False)
    assert value - cf.renyi_entropy(f1, alpha).value >= -1e-12
