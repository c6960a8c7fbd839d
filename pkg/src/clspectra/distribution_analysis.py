"""Triangular-law comparison and largest-eigenvalue predictions."""

from __future__ import annotations

import math
import warnings
from dataclasses import asdict, dataclass

import numpy as np
from scipy.optimize import bisect

from clspectra.degree_models import DegreeSequence
from clspectra.errors import ContractError

KAPPA_TRIANGLE = 12 / 5
MATCH_TOL = 1e-9


@dataclass(frozen=True)
class TriangularFit:
    b: float
    kappa_triangle: float
    kappa_graph: float
    b_match: float
    verdict: str
    m6_graph: float | None = None
    m6_triangle: float | None = None

    def to_dict(self) -> dict:
        return asdict(self)


@dataclass(frozen=True)
class Lambda1Prediction:
    regime: str
    predicted: float
    d2avg: float
    sqrt_w_max: float
    power_law_bound: float | None = None


def triangular_moments(b: float, k: int) -> float:
    """``k``-th moment of the symmetric triangle on ``[-b/2, b/2]``."""
    if not b > 0:
        raise ContractError("b must be positive")
    if k < 0:
        raise ContractError("k must be >= 0")
    if k % 2:
        return 0.0
    return 2 * (b / 2) ** k / ((k + 1) * (k + 2))


def triangular_density(x, b: float):
    """Density ``2/b - 4|x|/b^2`` on ``[-b/2, b/2]``, zero outside."""
    if not b > 0:
        raise ContractError("b must be positive")
    x = np.asarray(x, dtype=float)
    out = np.where(np.abs(x) <= b / 2, 2 / b - 4 * np.abs(x) / b**2, 0.0)
    return float(out) if out.ndim == 0 else out


def kurtosis_analysis(m2: float, m4: float, m6: float | None = None) -> TriangularFit:
    """Compare ``m4 / m2^2`` with the triangle's 12/5.

    A smaller kurtosis is reported as ``fat_tail`` and a larger one as
    ``thin_tail``, following the moment-based reading used for power-law
    spectra.  ``b_match`` matches the triangle's second moment ``b^2/24``.
    """
    if not m2 > 0:
        raise ContractError("m2 must be positive")
    kappa = m4 / m2**2
    if abs(kappa - KAPPA_TRIANGLE) < MATCH_TOL:
        verdict = "matched"
    elif kappa < KAPPA_TRIANGLE:
        verdict = "fat_tail"
    else:
        verdict = "thin_tail"
    b = math.sqrt(24 * m2)
    return TriangularFit(
        b=b,
        kappa_triangle=KAPPA_TRIANGLE,
        kappa_graph=kappa,
        b_match=b,
        verdict=verdict,
        m6_graph=m6,
        m6_triangle=triangular_moments(b, 6) if m6 is not None else None,
    )


def powerlaw_kurtosis(beta: float) -> float:
    """Limiting ``m4/m2^2 = 2 Lambda_2`` for a power law with ``Delta >> d``."""
    if not beta > 3:
        raise ContractError("kurtosis is finite only for beta > 3")
    return 2 * (beta - 2) ** 2 / ((beta - 1) * (beta - 3))


def beta_critical(lo: float = 3 + 1e-9, hi: float = 20.0, xtol: float = 1e-12) -> float:
    """Exponent at which the power-law kurtosis equals the triangle's (2 + sqrt 6)."""
    return bisect(lambda b: (b - 2) ** 2 / ((b - 1) * (b - 3)) - 6 / 5, lo, hi, xtol=xtol, maxiter=500)


def largest_eigenvalue_prediction(ds: DegreeSequence) -> Lambda1Prediction:
    """Largest eigenvalue of the unnormalised adjacency in its two asymptotic regimes.

    ``d2avg > sqrt(w_max) log n`` predicts ``d2avg``; ``sqrt(w_max) > d2avg
    log^2 n`` predicts ``sqrt(w_max)``.  Otherwise both candidates are
    plausible and the larger is returned with a warning.
    """
    logn = math.log(ds.n) if ds.n > 1 else 0.0
    d2, root = ds.d2avg, math.sqrt(ds.w_max)
    if d2 > root * logn:
        regime, pred = "volume", d2
    elif root > d2 * logn**2:
        regime, pred = "max_degree", root
    else:
        regime, pred = "indeterminate", max(d2, root)
        warnings.warn(
            f"neither regime condition holds at n={ds.n} (d2avg={d2:.4g}, sqrt(w_max)={root:.4g}); "
            "reporting the larger candidate",
            RuntimeWarning,
            stacklevel=2,
        )
    bound = 7 * math.sqrt(logn) * max(root, d2) if ds.model == "power_law" else None
    return Lambda1Prediction(regime, pred, d2, root, bound)
