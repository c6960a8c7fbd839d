"""Empirical spectral moments, eigenvalues and histograms of sampled graphs."""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np
import scipy.linalg

from clspectra.errors import ContractError
from clspectra.graph_sampler import (
    DENSE_CAP,
    AdjacencySample,
    MatrixKind,
    kind_matvec,
    matrix_of_kind,
)

METHODS = ("dense_power", "eigen_sum", "hutchinson")


@dataclass(frozen=True, eq=False)
class MomentReport:
    k_max: int
    moments: np.ndarray
    matrix_kind: MatrixKind
    method: str
    error_bars: np.ndarray | None = None
    probes: int | None = None
    seed: int | None = None

    def m(self, k: int) -> float:
        return float(self.moments[k - 1])

    def to_dict(self) -> dict:
        out = {
            "k_max": self.k_max,
            "moments": self.moments.tolist(),
            "matrix_kind": MatrixKind(self.matrix_kind).value,
            "method": self.method,
        }
        if self.method == "hutchinson":
            out.update(error_bars=self.error_bars.tolist(), probes=self.probes, probe_seed=self.seed)
        return out


@dataclass(frozen=True, eq=False)
class SpectrumHistogram:
    bin_edges: np.ndarray
    counts: np.ndarray
    eigenvalues: np.ndarray | None = None

    def rows(self):
        """``(bin_lo, bin_hi, count)`` triples, ready for CSV output."""
        for lo, hi, c in zip(self.bin_edges[:-1], self.bin_edges[1:], self.counts):
            yield float(lo), float(hi), int(c)


def dense_power_moments(M: np.ndarray, k_max: int) -> np.ndarray:
    """``trace(M^k) / n`` for ``k = 1..k_max`` of a symmetric matrix.

    Powers are accumulated up to ``ceil(k_max/2)``; higher traces use
    ``trace(M^(a+b)) = sum(M^a * M^b)``, valid because powers of a symmetric
    matrix are symmetric.
    """
    n = M.shape[0]
    half = (k_max + 1) // 2
    powers = [M]
    for _ in range(1, half):
        powers.append(powers[-1] @ M)
    out = np.empty(k_max)
    for k in range(1, k_max + 1):
        if k <= half:
            out[k - 1] = np.trace(powers[k - 1])
        else:
            a = k // 2
            out[k - 1] = np.vdot(powers[a - 1], powers[k - a - 1])
    return out / n


def moments_dense(
    smp: AdjacencySample,
    k_max: int,
    matrix_kind: MatrixKind | str = MatrixKind.CENTRALIZED,
    *,
    cap: int = DENSE_CAP,
) -> MomentReport:
    if k_max < 1:
        raise ContractError("k_max must be >= 1")
    kind = MatrixKind(matrix_kind)
    M = matrix_of_kind(smp, kind, cap=cap)
    return MomentReport(k_max, dense_power_moments(M, k_max), kind, "dense_power")


def eigenvalues(
    smp: AdjacencySample,
    matrix_kind: MatrixKind | str = MatrixKind.CENTRALIZED,
    *,
    cap: int = DENSE_CAP,
) -> np.ndarray:
    """All eigenvalues in ascending order (LAPACK ``syevd``)."""
    M = matrix_of_kind(smp, matrix_kind, cap=cap)
    try:
        return scipy.linalg.eigh(M, eigvals_only=True, driver="evd", check_finite=False)
    except np.linalg.LinAlgError as exc:
        raise np.linalg.LinAlgError(f"symmetric eigensolver failed for n={smp.n}: {exc}") from exc


def moments_from_eigenvalues(eigs: np.ndarray, k_max: int) -> np.ndarray:
    eigs = np.asarray(eigs, dtype=float)
    return np.array([math.fsum(eigs**k) for k in range(1, k_max + 1)]) / eigs.size


def moments_eigen_sum(smp: AdjacencySample, k_max: int, matrix_kind=MatrixKind.CENTRALIZED) -> MomentReport:
    kind = MatrixKind(matrix_kind)
    return MomentReport(k_max, moments_from_eigenvalues(eigenvalues(smp, kind), k_max), kind, "eigen_sum")


def moments_hutchinson(
    smp: AdjacencySample,
    k_max: int,
    probes: int = 64,
    seed: int = 0,
    matrix_kind: MatrixKind | str = MatrixKind.CENTRALIZED,
) -> MomentReport:
    """Rademacher-probe estimate of ``trace(M^k)/n`` via repeated matvecs.

    All probes are pushed through the operator together as an ``(n, probes)``
    block; ``error_bars`` are standard errors of the probe mean.
    """
    if probes < 8:
        raise ContractError("at least 8 probes are required")
    kind = MatrixKind(matrix_kind)
    op = kind_matvec(smp, kind)
    rng = np.random.default_rng(seed)
    Z = rng.choice(np.array([-1.0, 1.0]), size=(smp.n, probes))
    V = Z
    est = np.empty((k_max, probes))
    for k in range(k_max):
        V = op(V)
        est[k] = np.einsum("ij,ij->j", Z, V) / smp.n
    mean = est.mean(axis=1)
    se = est.std(axis=1, ddof=1) / math.sqrt(probes)
    return MomentReport(k_max, mean, kind, "hutchinson", se, probes, seed)


def largest_eigenvalue_power(
    smp: AdjacencySample,
    matrix_kind: MatrixKind | str = MatrixKind.CENTRALIZED,
    tol: float = 1e-10,
    max_iter: int = 10_000,
    seed: int = 0,
) -> float:
    """Eigenvalue of largest magnitude, signed, by power iteration on ``M^2``.

    Iterating on ``M^2`` treats ``lambda_max`` and ``-lambda_min`` alike; the
    sign is taken from the Rayleigh quotient of ``M`` at the final vector.
    """
    if not tol > 0:
        raise ContractError("tol must be positive")
    op = kind_matvec(smp, matrix_kind)
    x = np.random.default_rng(seed).standard_normal(smp.n)
    x /= np.linalg.norm(x)
    est = 0.0
    for _ in range(max_iter):
        y = op(op(x))
        new = float(np.linalg.norm(y))
        if new == 0.0:
            return 0.0
        x = y / new
        if abs(new - est) <= tol * new:
            est = new
            break
        est = new
    else:
        warnings.warn(
            f"power iteration stopped after {max_iter} iterations without reaching tol={tol}",
            RuntimeWarning,
            stacklevel=2,
        )
    magnitude = math.sqrt(est)
    rq = float(x @ op(x))
    return math.copysign(magnitude, rq)


def histogram(eigs: np.ndarray, binning: str | int | np.ndarray = "fd", *, keep_eigenvalues: bool = False) -> SpectrumHistogram:
    """Histogram of eigenvalues; Freedman-Diaconis bins unless overridden.

    ``binning`` may be any rule understood by ``numpy.histogram_bin_edges``,
    a bin count, or explicit edges.  Identical values give one unit-wide bin.
    """
    eigs = np.sort(np.asarray(eigs, dtype=float))
    if eigs.size == 0:
        raise ContractError("no eigenvalues to bin")
    lo, hi = eigs[0], eigs[-1]
    if lo == hi:
        edges = np.array([lo - 0.5, hi + 0.5])
    else:
        edges = np.histogram_bin_edges(eigs, bins=binning)
    counts, edges = np.histogram(eigs, bins=edges)
    return SpectrumHistogram(edges, counts, eigs if keep_eigenvalues else None)


def moment_bounds_on_lambda(m_k: float, k: int, n: int) -> tuple[float, float]:
    """``(m_k^(1/k), (n m_k)^(1/k))``, bracketing the largest ``|lambda|``.

    With ``m_k = trace(M^k)/n`` and ``k`` even, ``max|lambda|^k`` lies between
    the mean and the sum of the ``lambda_i^k``.
    """
    if k % 2:
        raise ContractError("moment bounds need an even k")
    if m_k < 0:
        raise ContractError("even moment must be non-negative")
    return m_k ** (1.0 / k), (n * m_k) ** (1.0 / k)
