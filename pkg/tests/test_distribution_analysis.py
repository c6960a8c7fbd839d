import math
import warnings

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from scipy.integrate import quad

from clspectra.degree_models import DegreeSequence, PowerLawParams, lambda_closed_form, make_constant, make_power_law
from clspectra.distribution_analysis import (
    KAPPA_TRIANGLE,
    beta_critical,
    kurtosis_analysis,
    largest_eigenvalue_prediction,
    powerlaw_kurtosis,
    triangular_density,
    triangular_moments,
)
from clspectra.errors import ContractError
from clspectra.moment_engine import limiting_moments

BETA_T = 2 + math.sqrt(6)


@given(st.floats(0.1, 20.0))
def test_triangular_moment_formulas(b):
    assert triangular_moments(b, 2) == pytest.approx(b**2 / 24)
    assert triangular_moments(b, 4) == pytest.approx(b**4 / 240)
    assert triangular_moments(b, 3) == 0.0
    assert triangular_moments(b, 4) / triangular_moments(b, 2) ** 2 == pytest.approx(KAPPA_TRIANGLE)


def test_triangular_m6_at_matched_width():
    assert triangular_moments(math.sqrt(24), 6) == pytest.approx(54 / 7, rel=1e-14)
    assert KAPPA_TRIANGLE == 12 / 5


def test_triangular_density():
    b = 3.0
    assert triangular_density(0.0, b) == pytest.approx(2 / b)
    assert triangular_density(b / 2, b) == 0.0 and triangular_density(-b / 2, b) == 0.0
    assert triangular_density(5.0, b) == 0.0
    assert quad(lambda x: triangular_density(x, b), -b / 2, b / 2)[0] == pytest.approx(1.0)
    m4 = quad(lambda x: x**4 * triangular_density(x, b), -b / 2, b / 2)[0]
    assert m4 == pytest.approx(triangular_moments(b, 4))
    assert triangular_density(np.array([0.0, 1.0]), b).shape == (2,)


def test_verdicts():
    fit = kurtosis_analysis(1.0, 12 / 5)
    assert fit.verdict == "matched" and fit.b_match == pytest.approx(math.sqrt(24))
    assert kurtosis_analysis(1.0, 2.0).verdict == "fat_tail"
    assert kurtosis_analysis(1.0, 3.0).verdict == "thin_tail"
    assert powerlaw_kurtosis(6) == pytest.approx(32 / 15)
    assert kurtosis_analysis(1.0, powerlaw_kurtosis(6)).verdict == "fat_tail"
    with pytest.raises(ContractError):
        kurtosis_analysis(0.0, 1.0)


@given(st.floats(0.1, 10.0), st.floats(1.0, 5.0), st.floats(1e-3, 1e3))
def test_verdict_scale_invariant(m2, kappa, c):
    a = kurtosis_analysis(m2, kappa * m2**2)
    b = kurtosis_analysis(c**2 * m2, kappa * (c**2 * m2) ** 2)
    if abs(kappa - KAPPA_TRIANGLE) > 1e-6:
        assert a.verdict == b.verdict


def test_beta_critical():
    b = beta_critical()
    assert b == pytest.approx(BETA_T, abs=1e-9)
    assert b == pytest.approx(4.449489742, abs=1e-9)
    assert abs(powerlaw_kurtosis(b) - 12 / 5) < 1e-10


def test_m6_at_beta_critical():
    p = PowerLawParams(BETA_T, 1.0, 1.0)
    lam = [lambda_closed_form(p, k, asymptotic=True) for k in (1, 2, 3)]
    m = limiting_moments(lam, 6, lambda_source="closed_form")
    assert m.m(4) == pytest.approx(12 / 5)
    assert m.m(6) == pytest.approx(12 * (18 + math.sqrt(6)) / 25, rel=1e-12)
    fit = kurtosis_analysis(m.m(2), m.m(4), m.m(6))
    assert fit.m6_triangle == pytest.approx(54 / 7)
    assert fit.m6_graph > fit.m6_triangle


def test_lambda1_regimes():
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        pred = largest_eigenvalue_prediction(make_constant(1000, 4 * math.log(1000) ** 2 / 1000))
    assert pred.regime == "volume" and pred.predicted == pytest.approx(pred.d2avg)
    with pytest.warns(RuntimeWarning, match="neither regime"):
        pred = largest_eigenvalue_prediction(make_constant(1000, 0.01))
    assert pred.regime == "indeterminate" and pred.predicted == pytest.approx(10)
    # a single hub over a very light background keeps d2avg tiny
    w = np.full(10**6, 0.004)
    w[0] = 4.0
    star = largest_eigenvalue_prediction(DegreeSequence(w))
    assert star.regime == "max_degree" and star.predicted == pytest.approx(2.0)
    assert star.power_law_bound is None


def test_lambda1_power_law_bound():
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        ds = make_power_law(1000, 3, 100, 10)
        pred = largest_eigenvalue_prediction(ds)
    expect = 7 * math.sqrt(math.log(1000)) * max(math.sqrt(ds.w_max), ds.d2avg)
    assert pred.power_law_bound == pytest.approx(expect)
