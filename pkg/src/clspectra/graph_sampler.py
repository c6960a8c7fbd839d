"""Chung-Lu sampling and the normalised / centralised adjacency operators.

A sample stores only its edge set.  The mean matrix ``E{A_n}`` is the rank-one
``coef * w w^T`` and is applied analytically, never materialised, except by
:func:`dense_matrix`.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np
import scipy.sparse as sp

from clspectra.degree_models import DegreeSequence
from clspectra.errors import A1Violation, ContractError, DenseCapExceeded

RNG_ID = "numpy.PCG64"
DENSE_CAP = 4096
_BLOCK_PAIRS = 1 << 22


class MatrixKind(str, enum.Enum):
    NORMALIZED = "normalized"  # sqrt(n rho) * a_ij
    CENTRALIZED = "centralized"  # sqrt(n rho) * (a_ij - rho w_i w_j)
    UNNORMALIZED = "unnormalized"  # a_ij
    CENTRALIZED_UNNORMALIZED = "centralized_unnormalized"  # a_ij - rho w_i w_j

    @property
    def centralized(self) -> bool:
        return self in (MatrixKind.CENTRALIZED, MatrixKind.CENTRALIZED_UNNORMALIZED)

    @property
    def normalized(self) -> bool:
        return self in (MatrixKind.NORMALIZED, MatrixKind.CENTRALIZED)

    @classmethod
    def of(cls, centralized: bool, normalized: bool) -> "MatrixKind":
        if normalized:
            return cls.CENTRALIZED if centralized else cls.NORMALIZED
        return cls.CENTRALIZED_UNNORMALIZED if centralized else cls.UNNORMALIZED


@dataclass(frozen=True, eq=False)
class AdjacencySample:
    """One Chung-Lu realisation.

    ``edges`` is an ``(m, 2)`` integer array of pairs ``i <= j`` in row-major
    order; a row ``(i, i)`` is a self-loop and puts 1 (not 2) on the diagonal.
    """

    n: int
    edges: np.ndarray
    w: np.ndarray
    rho: float
    seed: int | None = None
    rng_id: str = RNG_ID

    @property
    def norm(self) -> float:
        """Entry scale ``sqrt(n rho)`` of the normalised adjacency."""
        return math.sqrt(self.n * self.rho)

    @property
    def mean_coef(self) -> float:
        """``E{A_n} = mean_coef * w w^T`` with ``mean_coef = sqrt(n) rho^(3/2)``."""
        return math.sqrt(self.n) * self.rho**1.5

    @property
    def num_edges(self) -> int:
        return int(self.edges.shape[0])

    def scale(self, normalized: bool) -> float:
        return self.norm if normalized else 1.0

    def coef(self, normalized: bool) -> float:
        return self.mean_coef if normalized else self.rho

    @cached_property
    def adjacency(self) -> sp.csr_matrix:
        """Symmetric 0/1 sparse adjacency (self-loops as diagonal ones)."""
        i, j = self.edges[:, 0], self.edges[:, 1]
        off = i != j
        rows = np.concatenate([i, j[off]])
        cols = np.concatenate([j, i[off]])
        data = np.ones(rows.size)
        return sp.csr_matrix((data, (rows, cols)), shape=(self.n, self.n))

    def degrees(self) -> np.ndarray:
        return np.asarray(self.adjacency.sum(axis=1)).ravel()


def _row_blocks(n: int, block_pairs: int):
    start = 0
    while start < n:
        lengths = n - np.arange(start, n)
        stop = start + max(1, int(np.searchsorted(np.cumsum(lengths), block_pairs, side="right")))
        yield start, min(stop, n)
        start = stop


def sample(ds: DegreeSequence, seed: int, *, block_pairs: int = _BLOCK_PAIRS) -> AdjacencySample:
    """Draw every pair ``i <= j`` independently with probability ``rho w_i w_j``.

    One uniform variate per pair is consumed from ``PCG64(seed)`` in row-major
    order over ``i <= j``; the block size only affects memory, not the result.
    """
    if ds.max_edge_probability >= 1:
        raise A1Violation(
            f"A1 violated: edge probability >= 1 (rho * w_max^2 = {ds.max_edge_probability:.6g})"
        )
    if seed is None or int(seed) != seed or seed < 0:
        raise ContractError("seed must be a non-negative integer")
    seed = int(seed)
    rng = np.random.Generator(np.random.PCG64(seed))
    n, w, rho = ds.n, ds.w, ds.rho
    found = []
    for a, b in _row_blocks(n, block_pairs):
        rows = np.arange(a, b)
        lengths = n - rows
        i = np.repeat(rows, lengths)
        firsts = np.cumsum(lengths) - lengths
        j = i + (np.arange(i.size) - np.repeat(firsts, lengths))
        u = rng.random(i.size)
        hit = u < rho * w[i] * w[j]
        found.append(np.stack([i[hit], j[hit]], axis=1))
    edges = np.concatenate(found) if found else np.empty((0, 2), dtype=np.int64)
    edges = edges.astype(np.int64)
    edges.setflags(write=False)
    return AdjacencySample(n, edges, ds.w, ds.rho, seed)


def dense_matrix(
    smp: AdjacencySample,
    centralized: bool = False,
    *,
    normalized: bool = True,
    cap: int = DENSE_CAP,
) -> np.ndarray:
    """Materialise ``A_n`` or ``A_n - E{A_n}`` as a dense symmetric array."""
    if smp.n > cap:
        raise DenseCapExceeded(
            f"n={smp.n} exceeds the dense cap {cap}; use matvec / moments_hutchinson instead"
        )
    M = np.zeros((smp.n, smp.n))
    s = smp.scale(normalized)
    i, j = smp.edges[:, 0], smp.edges[:, 1]
    M[i, j] = s
    M[j, i] = s
    if centralized:
        M -= smp.coef(normalized) * np.outer(smp.w, smp.w)
    return M


def matrix_of_kind(smp: AdjacencySample, kind: MatrixKind | str, *, cap: int = DENSE_CAP) -> np.ndarray:
    kind = MatrixKind(kind)
    return dense_matrix(smp, kind.centralized, normalized=kind.normalized, cap=cap)


def matvec(
    smp: AdjacencySample,
    x: np.ndarray,
    centralized: bool = False,
    *,
    normalized: bool = True,
) -> np.ndarray:
    """``M x`` in ``O(|edges| + n)``; ``x`` may also be an ``(n, p)`` block."""
    x = np.asarray(x, dtype=float)
    if x.shape[0] != smp.n:
        raise ContractError(f"dimension mismatch: x has {x.shape[0]} rows, matrix is {smp.n}x{smp.n}")
    y = smp.scale(normalized) * (smp.adjacency @ x)
    if centralized:
        y = y - smp.coef(normalized) * np.multiply.outer(smp.w, smp.w @ x)
    return y


def kind_matvec(smp: AdjacencySample, kind: MatrixKind | str):
    kind = MatrixKind(kind)
    return lambda x: matvec(smp, x, kind.centralized, normalized=kind.normalized)


def expected_edge_count(ds: DegreeSequence) -> tuple[float, float]:
    """Mean and variance of the number of pairs ``i <= j`` drawn."""
    w, rho = ds.w, ds.rho
    P = rho * np.outer(w, w)
    iu = np.triu_indices(ds.n)
    p = P[iu]
    return float(p.sum()), float((p * (1 - p)).sum())
