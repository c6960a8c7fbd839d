import math

import numpy as np
import pytest

from clspectra.assumptions import check_assumptions, judge
from clspectra.degree_models import DegreeSequence, make_constant
from clspectra.errors import ContractError

LADDER = [1000, 10000, 100000]


def test_er_log_n_over_n_consistent():
    diag = check_assumptions({"model": "constant", "p": "2*log(n)/n"}, LADDER)
    assert diag.a1_hard_all
    assert diag.a1_trend.verdict == "consistent"
    assert all(r.verdict == "consistent" for r in diag.a3_trends.values())
    assert diag.a2_verdict == "consistent"
    assert diag.overall == "consistent"


def test_fixed_p_is_not_sparse():
    diag = check_assumptions({"model": "constant", "p": 0.5}, LADDER)
    assert diag.a1_trend.verdict == "inconsistent"
    assert diag.overall == "inconsistent"


def test_exponential_log_n_consistent():
    diag = check_assumptions({"model": "exponential", "Delta_n": "log(n)", "alpha": 1.0}, LADDER)
    assert diag.overall == "consistent"
    assert diag.lambda_stability < 0.05


def test_hard_failure_forces_verdict():
    def build(n):
        return make_constant(n, 0.5)

    assert check_assumptions(build, [2, 3, 4]).a1_hard_all

    def bad(n):
        w = np.ones(n)
        w[0] = n  # rho * w_max^2 >= 1
        return DegreeSequence(w)

    diag = check_assumptions(bad, [10, 20, 40])
    assert not diag.a1_hard_all and diag.overall == "fails A1"


def test_deterministic():
    model = {"model": "power_law", "beta": 3.0, "Delta": "sqrt(n)", "d": 5.0}
    assert check_assumptions(model, LADDER).to_dict() == check_assumptions(model, LADDER).to_dict()


def test_records_keep_raw_values():
    diag = check_assumptions({"model": "constant", "p": "2*log(n)/n"}, LADDER)
    rec = diag.a3_trends["n_rho"]
    assert rec.values[0] == pytest.approx(1 / (2 * math.log(1000)))
    assert rec.slope < 0


def test_ladder_contracts():
    model = {"model": "constant", "p": 0.1}
    for ladder in ([100, 1000], [100, 100, 1000], [1, 10, 100]):
        with pytest.raises(ContractError):
            check_assumptions(model, ladder)
    with pytest.raises(ContractError, match="parametric"):
        check_assumptions({"model": "file"}, LADDER)


def test_judge_rules():
    ns = [10, 100, 1000]
    assert judge("vanishing", ns, [1.0, 0.5, 0.2]) == "consistent"
    assert judge("vanishing", ns, [1.0, 0.9, 0.8]) == "inconclusive"
    assert judge("vanishing", ns, [1.0, 1.0, 1.0]) == "inconsistent"
    assert judge("bounded", ns, [1.0, 1.05, 1.1]) == "consistent"
    assert judge("bounded", ns, [1.0, 2.0, 4.0]) == "inconsistent"
    assert judge("log_bounded", ns, [math.log(10), math.log(100), math.log(1000)]) == "consistent"
    assert judge("above_inverse_n", ns, [1.0, 0.5, 0.2]) == "consistent"
    assert judge("above_inverse_n", ns, [1.0, 0.01, 0.0001]) == "inconsistent"
    assert judge("bounded", ns, [1.0, float("inf"), 1.0]) == "inconsistent"
    with pytest.raises(ValueError):
        judge("sideways", ns, [1, 2, 3])
