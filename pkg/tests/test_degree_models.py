import math
import warnings

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from clspectra.degree_models import (
    DegreeSequence,
    ExponentialParams,
    PowerLawParams,
    eval_in_n,
    lambda_closed_form,
    lambda_estimates,
    load_custom,
    make_constant,
    make_exponential,
    make_power_law,
    power_sums,
    powerlaw_f,
    sequence_from_model,
)
from clspectra.errors import A1Violation, ContractError, DivergentMomentError

BETA_T = 2 + math.sqrt(6)

weights = st.lists(st.floats(0.01, 100.0), min_size=1, max_size=60).map(np.array)


def test_constant_er_parameters():
    ds = make_constant(1000, 0.01)
    assert np.all(ds.w == 10)
    assert ds.rho == pytest.approx(1e-4, rel=1e-15)
    assert ds.d2avg == pytest.approx(10.0, rel=1e-12)


@pytest.mark.parametrize("n,p,rho,d2", [(1, 0.5, 2.0, 0.5), (4, 0.25, 0.25, 1.0)])
def test_constant_small(n, p, rho, d2):
    ds = make_constant(n, p)
    assert ds.rho == pytest.approx(rho)
    assert ds.d2avg == pytest.approx(d2)


@pytest.mark.parametrize("p", [0.0, 1.0, -0.1])
def test_constant_rejects_bad_p(p):
    with pytest.raises(ContractError):
        make_constant(10, p)


def test_exponential_volume_closed_form():
    n, Delta, alpha = 10**6, 10.0, 1.0
    ds = make_exponential(n, ExponentialParams(Delta, alpha, "quantile_grid"))
    assert 1 / ds.rho == pytest.approx(n * Delta / alpha * (1 - math.exp(-alpha)), rel=1e-4)


def test_exponential_tiny_alpha_is_constant():
    ds = make_exponential(500, ExponentialParams(7.0, 1e-9, "quantile_grid"))
    assert np.allclose(ds.w, 7.0, rtol=1e-8)


def test_exponential_d2avg():
    ds = make_exponential(10**5, ExponentialParams(10.0, 1.0, "quantile_grid"))
    expected = 10 * (1 - math.exp(-2)) / (2 * (1 - math.exp(-1)))
    assert expected == pytest.approx(6.8393, abs=1e-4)
    assert ds.d2avg == pytest.approx(expected, rel=1e-4)


@given(st.floats(0.05, 5.0), st.floats(1.0, 50.0), st.integers(0, 2**32))
@settings(max_examples=30, deadline=None)
def test_exponential_range(alpha, Delta, seed):
    ds = make_exponential(200, ExponentialParams(Delta, alpha), seed)
    assert ds.w.min() >= Delta * math.exp(-alpha) * (1 - 1e-12)
    assert ds.w.max() <= Delta


def test_exponential_seed_determinism():
    p = ExponentialParams(10.0, 1.0)
    assert np.array_equal(make_exponential(100, p, 3).w, make_exponential(100, p, 3).w)
    assert not np.array_equal(make_exponential(100, p, 3).w, make_exponential(100, p, 4).w)


def test_powerlaw_params_identities():
    p = PowerLawParams(3.0, 100.0, 10.0, 1000)
    assert p.c == pytest.approx(0.5 * 10 * 1000**0.5)
    assert p.i0 == pytest.approx(1000 * (10 * 1 / (100 * 2)) ** 2)
    with pytest.raises(ContractError):
        PowerLawParams(3.0, 5.0, 10.0)
    with pytest.raises(ContractError):
        PowerLawParams(2.0, 50.0, 10.0)


def test_powerlaw_table_profile():
    ds = make_power_law(1000, 3, 100, 10)
    assert np.all(np.diff(ds.w) <= 0)
    assert ds.max_edge_probability < 1
    # the finite Delta/d ratio pulls the mean below d
    f1 = powerlaw_f(10 / 100, 3, 1)
    assert ds.w.mean() == pytest.approx(10 * f1, rel=0.01)
    assert 9.3 < ds.w.mean() < 9.7


def test_powerlaw_unshifted_profile_starts_at_delta():
    ds = make_power_law(1000, 3, 100, 10, index_shift=0.0, validate=False)
    assert ds.w_max == pytest.approx(100.0)
    with pytest.raises(A1Violation):
        make_power_law(1000, 3, 100, 10, index_shift=0.0)


def test_powerlaw_near_constant_when_delta_equals_d():
    ds = make_power_law(500, 3, 10, 10)
    assert np.all(np.diff(ds.w) <= 0)


def test_powerlaw_large_n_limits():
    # both limits need i0 >> 1 and Delta >> d at the same time
    ds = make_power_law(10**5, 4, 100, 10)
    assert ds.w_max / 100 == pytest.approx(1, rel=0.02)
    assert ds.w.mean() / 10 == pytest.approx(1, rel=0.02)


def test_load_custom(tmp_path):
    f = tmp_path / "w.txt"
    f.write_text("1\n2\n3\n")
    ds = load_custom(f)
    assert ds.n == 3 and ds.rho == pytest.approx(1 / 6) and ds.w_max == 3


def test_load_custom_header_and_commas(tmp_path):
    f = tmp_path / "w.txt"
    f.write_text("# clspectra-degseq v1\n\n1, 2\n3\n")
    assert load_custom(f).n == 3


@pytest.mark.parametrize("body", ["1\n-2\n", "1\nabc\n", "", "# only a comment\n", "1\nnan\n", "inf\n"])
def test_load_custom_rejects(tmp_path, body):
    f = tmp_path / "w.txt"
    f.write_text(body)
    with pytest.raises(ContractError):
        load_custom(f)


def test_load_custom_matches_constant(tmp_path):
    f = tmp_path / "w.txt"
    f.write_text("10\n" * 1000)
    a, b = load_custom(f), make_constant(1000, 0.01)
    assert np.array_equal(a.w, b.w)
    assert (a.rho, a.w_max, a.w_min, a.d2avg) == (b.rho, b.w_max, b.w_min, b.d2avg)


def test_power_sums_values():
    ds = DegreeSequence(np.array([1.0, 2.0, 3.0]))
    assert power_sums(ds, 2)[1] == 14
    c = make_constant(50, 0.1)
    assert np.allclose(power_sums(c, 6), 50 * 5.0 ** np.arange(1, 7), rtol=1e-14)
    pl = make_power_law(1000, 3, 100, 10)
    assert power_sums(pl, 1)[0] == pytest.approx(1 / pl.rho, rel=1e-15)


def test_power_sums_overflow_to_inf():
    ds = DegreeSequence(np.array([1e100, 1.0]))
    out = power_sums(ds, 4)
    assert math.isinf(out[3])


@given(weights)
@settings(max_examples=60)
def test_lambda1_is_one_and_jensen(w):
    ds = DegreeSequence(w)
    lam = lambda_estimates(ds, 4)
    assert lam[0] == pytest.approx(1.0, abs=1e-12)
    s = power_sums(ds, 2)
    assert s[1] / ds.n >= (s[0] / ds.n) ** 2 * (1 - 1e-12)
    assert ds.d2avg == pytest.approx(ds.n * ds.rho * s[1] / ds.n, rel=1e-12)


def test_lambda_constant_is_one():
    assert np.allclose(lambda_estimates(make_constant(300, 0.02), 10), 1.0, rtol=1e-12)


def test_exponential_lambda_convergence():
    alpha = 1.0
    params = ExponentialParams(10.0, alpha, "quantile_grid")
    lam = lambda_estimates(make_exponential(10**6, params), 8)
    closed = [lambda_closed_form(params, k) for k in range(1, 9)]
    assert lam[1] == pytest.approx(1.0820, abs=1e-4)
    assert np.allclose(lam, closed, rtol=1e-3)


@given(st.floats(1e-6, 20.0))
def test_exponential_lambda1_closed_form(alpha):
    assert lambda_closed_form(ExponentialParams(1.0, alpha), 1) == pytest.approx(1.0, rel=1e-12)


def test_powerlaw_asymptotic_lambdas_at_critical_beta():
    p = PowerLawParams(BETA_T, 1e9, 1.0)
    assert lambda_closed_form(p, 2, asymptotic=True) == pytest.approx(6 / 5, rel=1e-12)
    # (54 + 6 sqrt 6) / 25, the value that the closed form actually takes
    assert lambda_closed_form(p, 3, asymptotic=True) == pytest.approx((54 + 6 * math.sqrt(6)) / 25, rel=1e-12)
    assert lambda_closed_form(p, 2) == pytest.approx(6 / 5, rel=1e-6)


def test_powerlaw_pole_and_divergent_branch():
    p = PowerLawParams(3.0, 100.0, 10.0)
    with pytest.raises(DivergentMomentError):
        lambda_closed_form(p, 2)
    with pytest.raises(DivergentMomentError):
        lambda_closed_form(p, 3, asymptotic=True)
    with pytest.warns(RuntimeWarning):
        v = lambda_closed_form(p, 3)
    assert math.isfinite(v) and v > 0


def test_powerlaw_closed_form_tracks_finite_sequence():
    ds = make_power_law(10**6, 5.0, 300.0, 10.0)
    p = PowerLawParams(5.0, 300.0, 10.0)
    lam = lambda_estimates(ds, 3)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        closed = [lambda_closed_form(p, k) for k in (1, 2, 3)]
    assert np.allclose(lam, closed, rtol=0.01)


def test_roundtrip_dict():
    ds = make_power_law(200, 3.5, 40, 5)
    back = DegreeSequence.from_dict(ds.to_dict())
    assert np.array_equal(back.w, ds.w) and back.model == "power_law" and back.params == ds.params


def test_sequence_is_read_only():
    ds = make_constant(5, 0.1)
    with pytest.raises(ValueError):
        ds.w[0] = 3.0


def test_eval_in_n():
    assert eval_in_n("2*log(n)/n", 100) == pytest.approx(2 * math.log(100) / 100)
    assert eval_in_n(lambda n: n + 1, 4) == 5
    assert eval_in_n(0.3, 10) == 0.3
    for bad in ("__import__('os')", "n.real", "x+1"):
        with pytest.raises(ContractError):
            eval_in_n(bad, 3)


def test_sequence_from_model():
    ds = sequence_from_model({"model": "constant", "p": "3*log(n)/n"}, 1000)
    assert ds.w[0] == pytest.approx(3 * math.log(1000))
    with pytest.raises(ContractError, match="parametric"):
        sequence_from_model({"model": "custom"}, 10)
