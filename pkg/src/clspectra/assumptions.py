"""Finite-n diagnostics for the sparsity and degree-growth assumptions.

The assumptions are asymptotic, so each one is judged by how a quantity moves
along a ladder of graph sizes.  The thresholds below are heuristics; every
record keeps its raw values so a caller can apply a different rule.

============  =====================  ==========================================
growth class  rule                   consistent iff
============  =====================  ==========================================
o(1)          ``"vanishing"``        strictly decreasing, last <= 0.75 * first
O(1)          ``"bounded"``          each step grows by at most 10%
O(log n)      ``"log_bounded"``      q / log n grows by at most 10% per step
omega(1/n)    ``"above_inverse_n"``  n * q strictly increasing
============  =====================  ==========================================
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field
from typing import Any, Callable, Mapping, Sequence

import numpy as np

from clspectra.degree_models import DegreeSequence, lambda_estimates, sequence_from_model
from clspectra.errors import ContractError

SLACK = 0.10
VANISH_FACTOR = 0.75
A2_TOL = 0.05

# name -> (assumption label, growth class)
CONDITIONS = {
    "rho_wmax2": ("A1", "vanishing"),
    "rho_wmax2_times_n": ("A3(ii)", "above_inverse_n"),
    "wmax_over_wmin": ("A3(i)", "log_bounded"),
    "n_rho": ("A3(iii)", "vanishing"),
    "n_rho_wmax": ("A3(iv)", "bounded"),
    "wmax": ("A3(v)", "log_bounded"),
    "d2avg_logn_over_n": ("A3(vi)", "vanishing"),
}


@dataclass(frozen=True)
class TrendRecord:
    name: str
    assumption: str
    growth: str
    values: list[float]
    slope: float
    verdict: str


@dataclass(frozen=True)
class AssumptionDiagnostics:
    ladder: list[int]
    a1_hard: list[bool]
    a1_trend: TrendRecord
    a3_trends: dict[str, TrendRecord]
    lambda_values: list[list[float]]
    lambda_stability: float
    a2_verdict: str
    overall: str = field(default="inconclusive")

    @property
    def a1_hard_all(self) -> bool:
        return all(self.a1_hard)

    def to_dict(self) -> dict:
        return asdict(self)


def _slope(ns: np.ndarray, q: np.ndarray) -> float:
    if np.any(q <= 0) or not np.all(np.isfinite(q)):
        return math.nan
    return float(np.polyfit(np.log(ns), np.log(q), 1)[0])


def judge(growth: str, ns: Sequence[int], q: Sequence[float]) -> str:
    ns = np.asarray(ns, dtype=float)
    q = np.asarray(q, dtype=float)
    if not np.all(np.isfinite(q)):
        return "inconsistent"
    if growth == "vanishing":
        if np.all(np.diff(q) < 0):
            return "consistent" if q[-1] <= VANISH_FACTOR * q[0] else "inconclusive"
        return "inconsistent"
    if growth == "bounded":
        return "consistent" if np.all(q[1:] <= (1 + SLACK) * q[:-1]) else "inconsistent"
    if growth == "log_bounded":
        r = q / np.log(ns)
        return "consistent" if np.all(r[1:] <= (1 + SLACK) * r[:-1]) else "inconsistent"
    if growth == "above_inverse_n":
        return "consistent" if np.all(np.diff(ns * q) > 0) else "inconsistent"
    raise ValueError(f"unknown growth class {growth!r}")


def ladder_quantities(ds: DegreeSequence) -> dict[str, float]:
    n = ds.n
    logn = math.log(n)
    return {
        "rho_wmax2": ds.rho * ds.w_max**2,
        "rho_wmax2_times_n": ds.rho * ds.w_max**2,  # judged on n * q
        "wmax_over_wmin": ds.w_max / ds.w_min if ds.w_min > 0 else math.inf,
        "n_rho": n * ds.rho,
        "n_rho_wmax": n * ds.rho * ds.w_max,
        "wmax": ds.w_max,
        "d2avg_logn_over_n": ds.d2avg * logn / n,
    }


def check_assumptions(
    model: Mapping[str, Any] | Callable[[int], DegreeSequence],
    n_ladder: Sequence[int],
    k_max: int = 8,
) -> AssumptionDiagnostics:
    """Evaluate every condition at each ladder size and classify its trend.

    ``model`` is either a mapping accepted by
    :func:`clspectra.degree_models.sequence_from_model` (parameters may be
    expressions in ``n``) or a callable returning the size-``n`` sequence.
    """
    ladder = [int(n) for n in n_ladder]
    if len(ladder) < 3:
        raise ContractError("the ladder needs at least 3 sizes")
    if any(b <= a for a, b in zip(ladder, ladder[1:])):
        raise ContractError("the ladder must be strictly increasing")
    if ladder[0] < 2:
        raise ContractError("ladder sizes must be >= 2")
    build = model if callable(model) else (lambda n: sequence_from_model(model, n))

    per_n = []
    lambdas = []
    hard = []
    for n in ladder:
        ds = build(n)
        per_n.append(ladder_quantities(ds))
        lambdas.append(lambda_estimates(ds, k_max).tolist())
        hard.append(bool(ds.rho * ds.w_max**2 < 1))

    ns = np.array(ladder, dtype=float)
    records = {}
    for name, (label, growth) in CONDITIONS.items():
        q = [row[name] for row in per_n]
        records[name] = TrendRecord(name, label, growth, q, _slope(ns, np.array(q)), judge(growth, ladder, q))

    lam = np.array(lambdas)
    rel = np.abs(np.diff(lam, axis=0)) / np.abs(lam[:-1])
    stability = float(rel.max())
    a2 = "consistent" if stability < A2_TOL else "inconclusive"

    a1_trend = records.pop("rho_wmax2")
    verdicts = [a1_trend.verdict, a2, *(r.verdict for r in records.values())]
    if not all(hard):
        overall = "fails A1"
    elif "inconsistent" in verdicts:
        overall = "inconsistent"
    elif all(v == "consistent" for v in verdicts):
        overall = "consistent"
    else:
        overall = "inconclusive"
    return AssumptionDiagnostics(ladder, hard, a1_trend, records, lambdas, stability, a2, overall)
