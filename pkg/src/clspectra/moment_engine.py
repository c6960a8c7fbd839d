"""Limiting spectral moments from tree degree distributions.

The even moment ``m_{2s}`` is a sum over integer vectors ``r`` with
``sum r_j = s + 1`` and ``sum j r_j = 2s`` (degree distributions of trees
with ``s`` edges).  Each vector contributes ``count(r) * prod Lambda_j^r_j``
where ``count(r) = 2/(s+1) * multinomial(s+1; r)`` is the number of rooted
ordered trees with that degree distribution.  Odd moments vanish.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

import numpy as np

from clspectra.errors import ContractError

S_CAP = 64
LAMBDA_SOURCES = ("finite_n_estimate", "closed_form")


@dataclass(frozen=True)
class TreeDegreeDistribution:
    s: int
    r: tuple[int, ...]
    tree_count: int


@dataclass(frozen=True, eq=False)
class TheoreticalMoments:
    """Moments ``m_1..m_k_max`` (odd entries are exactly zero)."""

    k_max: int
    moments: np.ndarray
    lambda_source: str = "finite_n_estimate"
    model: str | None = None

    def m(self, k: int) -> float:
        return float(self.moments[k - 1])

    @property
    def even_moments(self) -> np.ndarray:
        return self.moments[1::2]

    def to_dict(self) -> dict:
        return {
            "k_max": self.k_max,
            "moments": self.moments.tolist(),
            "lambda_source": self.lambda_source,
            "model": self.model,
        }


def multinomial(n: int, parts: Sequence[int]) -> int:
    """Exact ``n! / prod(parts!)``; ``parts`` must sum to ``n``."""
    if sum(parts) != n or any(p < 0 for p in parts):
        raise ContractError(f"parts {tuple(parts)} do not partition {n}")
    out, left = 1, n
    for p in parts:
        out *= math.comb(left, p)
        left -= p
    return out


def tree_count(r: Sequence[int]) -> int:
    """Number of rooted ordered trees with degree distribution ``r``."""
    s = len(r)
    num = 2 * multinomial(s + 1, r)
    q, rem = divmod(num, s + 1)
    if rem:
        raise ArithmeticError(f"non-integral tree count for r={tuple(r)}")
    return q


def catalan(s: int) -> int:
    if s < 0:
        raise ContractError("Catalan index must be >= 0")
    return math.comb(2 * s, s) // (s + 1)


@lru_cache(maxsize=None)
def _rs(s: int) -> tuple[TreeDegreeDistribution, ...]:
    found = []
    r = [0] * s

    # fill r_s, r_{s-1}, ..., r_1 under the remaining vertex / degree budgets
    def walk(j: int, vertices: int, degree: int):
        if j == 1:
            if vertices == degree:
                r[0] = vertices
                found.append(tuple(r))
            return
        # every unfilled slot still needs degree >= 1 per remaining vertex
        top = min(vertices, (degree - vertices) // (j - 1))
        for rj in range(top + 1):
            r[j - 1] = rj
            walk(j - 1, vertices - rj, degree - j * rj)
        r[j - 1] = 0

    walk(s, s + 1, 2 * s)
    found.sort()
    return tuple(TreeDegreeDistribution(s, rv, tree_count(rv)) for rv in found)


def enumerate_Rs(s: int) -> list[TreeDegreeDistribution]:
    """All tree degree distributions with ``s`` edges, in lexicographic order of ``r``."""
    if not 1 <= s <= S_CAP:
        raise ContractError(f"s must lie in [1, {S_CAP}], got {s}")
    return list(_rs(s))


def _assemble(s: int, lam: Sequence[float]) -> float:
    terms = []
    for t in _rs(s):
        prod = 1.0
        for j, rj in enumerate(t.r):
            if rj:
                prod *= lam[j] ** rj
        terms.append(float(t.tree_count) * prod)
    return math.fsum(terms)


def limiting_moments(
    lambdas: Sequence[float],
    k_max: int,
    *,
    lambda_source: str = "finite_n_estimate",
    model: str | None = None,
) -> TheoreticalMoments:
    """Moments ``m_1..m_k_max`` from ``Lambda_1, Lambda_2, ...``."""
    if lambda_source not in LAMBDA_SOURCES:
        raise ContractError(f"lambda_source must be one of {LAMBDA_SOURCES}")
    lam = [float(x) for x in lambdas]
    need = k_max // 2
    if len(lam) < need:
        raise ContractError(f"k_max={k_max} needs {need} Lambda values, got {len(lam)}")
    if need and not lam[0] > 0:
        raise ContractError("Lambda_1 must be positive")
    out = np.zeros(k_max)
    for s in range(1, need + 1):
        out[2 * s - 1] = _assemble(s, lam)
    return TheoreticalMoments(k_max, out, lambda_source, model)


def exponential_moments(alpha: float, k_max: int) -> TheoreticalMoments:
    """Limiting moments for ``w = Delta exp(-alpha x)``, ``x`` uniform on [0, 1].

    Uses the factorised form ``alpha^(s-1) / (1-e^-alpha)^(2s) *
    sum count(r) prod ((1 - e^(-k alpha)) / k)^r_k``.
    """
    if not alpha > 0:
        raise ContractError(f"alpha must be positive, got {alpha}")
    one_minus = -math.expm1(-alpha)
    g = [-math.expm1(-k * alpha) / k for k in range(1, k_max // 2 + 1)]
    out = np.zeros(k_max)
    for s in range(1, k_max // 2 + 1):
        out[2 * s - 1] = alpha ** (s - 1) / one_minus ** (2 * s) * _assemble(s, g)
    return TheoreticalMoments(k_max, out, "closed_form", "exponential")


def rescale_moments(moments: Sequence[float], entry_scale: float) -> np.ndarray:
    """Moments of ``c M`` given those of ``M``: ``m_k -> c^k m_k``."""
    m = np.asarray(moments, dtype=float)
    return m * entry_scale ** np.arange(1, m.size + 1)
