from __future__ import annotations

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import integrate, stats

from wgorder.baseline import BaselineModel, baseline_quantile
from wgorder.errors import ParameterDomainError
from wgorder.weibull_g import (
    WeibullGParams,
    wg_cdf,
    wg_hazard,
    wg_isf,
    wg_pdf,
    wg_quantile,
    wg_sample,
    wg_survival,
)

EXP1 = BaselineModel.exponential(1.0)
BASELINES = [
    EXP1,
    BaselineModel.weibull(0.02, 2.0),
    BaselineModel.burr(3.0, 0.35),
    BaselineModel.lomax(2.0),
]


def wg(alpha=1.0, beta=1.0, gamma=1.0, baseline=EXP1):
    return WeibullGParams(alpha, beta, gamma, baseline)


def oracle_cdf_exponential(alpha, beta, gamma, x):
    # Exponential(1) baseline: w(y) = e^y - 1
    return 1 - math.exp(-alpha * math.expm1(gamma * x) ** beta)


def test_cdf_examples():
    assert wg_cdf(wg(), 0.0) == 0.0
    assert wg_cdf(wg(), math.log(2)) == pytest.approx(1 - math.exp(-1), rel=1e-14)
    assert wg_cdf(wg(2, 2), math.log(2)) == pytest.approx(1 - math.exp(-2), rel=1e-14)
    assert 1 - math.exp(-1) == pytest.approx(0.632121, abs=1e-6)
    assert 1 - math.exp(-2) == pytest.approx(0.864665, abs=1e-6)


@pytest.mark.parametrize("alpha,beta,gamma", [(0.5, 0.7, 1.3), (2.0, 3.0, 0.4), (1.0, 1.0, 2.0)])
def test_cdf_against_closed_form(alpha, beta, gamma):
    for x in [0.05, 0.2, 0.6, 1.1]:
        assert wg_cdf(wg(alpha, beta, gamma), x) == pytest.approx(oracle_cdf_exponential(alpha, beta, gamma, x), rel=1e-12)


def test_survival_and_hazard_examples():
    assert wg_survival(wg(), 0.0) == 1.0
    assert wg_hazard(wg(2.0, 1.0), 0.0) == pytest.approx(2.0)


def test_hazard_diverges_for_small_beta():
    assert wg_hazard(wg(1.0, 0.5), 0.0) == math.inf
    assert math.isfinite(wg_hazard(wg(1.0, 0.5), 0.1))


def test_pdf_integrates_to_one():
    # the odds saturate near x = 27.6; beyond 27 the survival is below exp(-1e23)
    total, _ = integrate.quad(lambda x: wg_pdf(wg(1, 2), x), 0, 27, limit=200)
    assert total == pytest.approx(1.0, abs=1e-5)


@pytest.mark.parametrize("baseline", BASELINES, ids=str)
@pytest.mark.parametrize("beta", [0.5, 1.0, 2.0, 5.0])
def test_normalisation_on_grid(baseline, beta):
    p = wg(1.3, beta, 0.8, baseline)
    x = np.linspace(0, float(wg_quantile(p, 1 - 1e-9)), 300)
    F = np.asarray(wg_cdf(p, x))
    assert F[0] == 0.0
    assert np.all(np.diff(F) >= 0)
    assert F[-1] == pytest.approx(1.0, abs=1e-8)


@pytest.mark.parametrize("baseline", BASELINES, ids=str)
def test_pdf_equals_hazard_times_survival(baseline):
    p = wg(0.7, 2.5, 1.4, baseline)
    x = np.linspace(0.01, float(wg_quantile(p, 0.999)), 200)
    assert np.max(np.abs(wg_pdf(p, x) - wg_hazard(p, x) * wg_survival(p, x))) < 1e-12


def test_hazard_formula_matches_numeric_log_survival_slope():
    p = wg(1.5, 2.2, 0.9, BaselineModel.burr(3, 0.35))
    x, h = 1.1, 1e-5
    slope = -(math.log(wg_survival(p, x + h)) - math.log(wg_survival(p, x - h))) / (2 * h)
    assert wg_hazard(p, x) == pytest.approx(slope, rel=1e-7)


def test_exponential_g_reduction():
    m = BaselineModel.burr(3, 0.35)
    p = wg(1.7, 1.0, 1.0, m)
    for x in [0.2, 0.7, 1.5]:
        w = (1 + x**3) ** 0.35 - 1
        assert wg_cdf(p, x) == pytest.approx(1 - math.exp(-1.7 * w), rel=1e-13)


@pytest.mark.parametrize("baseline", BASELINES, ids=str)
def test_scale_coherence(baseline):
    x = np.linspace(0, 3, 40)
    a = wg_cdf(wg(1.2, 1.7, 2.3, baseline), x)
    b = wg_cdf(wg(1.2, 1.7, 1.0, baseline), 2.3 * x)
    np.testing.assert_array_equal(a, b)


def test_quantile_examples():
    assert wg_quantile(wg(), 0.0) == 0.0
    assert wg_quantile(wg(), 1 - math.exp(-1)) == pytest.approx(math.log(2), rel=1e-12)
    with pytest.raises(ParameterDomainError):
        wg_quantile(wg(), 1.0)
    with pytest.raises(ParameterDomainError):
        wg_quantile(wg(), -0.1)


@pytest.mark.parametrize("baseline", BASELINES, ids=str)
def test_quantile_round_trip(baseline):
    p = wg(2.0, 3.0, 1.5, baseline)
    u = np.arange(1, 10) / 10
    np.testing.assert_allclose(wg_cdf(p, wg_quantile(p, u)), u, atol=1e-8)


def test_quantile_matches_closed_form_inverse():
    # x = F^{-1}(t / (1 + t)) / gamma with t = (-ln(1-u)/alpha)^(1/beta)
    m = BaselineModel.weibull(0.02, 2.0)
    p = wg(2.0, 3.4, 1.5, m)
    for u in [0.1, 0.5, 0.9]:
        t = (-math.log1p(-u) / 2.0) ** (1 / 3.4)
        expected = baseline_quantile(m, t / (1 + t)) / 1.5
        assert wg_quantile(p, u) == pytest.approx(expected, rel=1e-10)


def test_isf_is_quantile_of_complement():
    p = wg(1.1, 2.0, 0.5, BaselineModel.lomax(2.0))
    assert wg_isf(p, 0.3) == pytest.approx(wg_quantile(p, 0.7), rel=1e-12)


def test_sample_determinism():
    p = wg()
    a, b = wg_sample(p, 7, 3), wg_sample(p, 7, 3)
    np.testing.assert_array_equal(a, b)
    assert not np.array_equal(a, wg_sample(p, 8, 3))
    with pytest.raises(ParameterDomainError):
        wg_sample(p, 7, 0)


def test_sample_monte_carlo_oracles():
    p = wg()
    draws = wg_sample(p, 2024, 100_000)
    assert np.mean(draws <= math.log(2)) == pytest.approx(0.632, abs=0.005)
    ks = stats.kstest(draws, lambda x: np.asarray(wg_cdf(p, np.asarray(x)))).statistic
    assert ks < 0.01


@pytest.mark.parametrize("kwargs", [{"alpha": 0}, {"beta": -1}, {"gamma": math.inf}])
def test_parameter_validation(kwargs):
    with pytest.raises(ParameterDomainError):
        wg(**kwargs)


@settings(max_examples=80, deadline=None)
@given(
    st.floats(0.1, 5),
    st.floats(0.3, 6),
    st.floats(0.2, 3),
    st.sampled_from(BASELINES),
    st.floats(0.001, 0.999),
)
def test_quantile_round_trip_property(alpha, beta, gamma, baseline, u):
    p = wg(alpha, beta, gamma, baseline)
    assert wg_cdf(p, wg_quantile(p, u)) == pytest.approx(u, abs=1e-10)
