"""Expected degree sequences and the scalars derived from them.

A Chung-Lu graph on ``n`` vertices is parameterised by a vector ``w`` of
expected degrees.  Edge ``{i, j}`` appears with probability ``rho * w_i * w_j``
where ``rho = 1 / sum(w)`` is the inverse expected volume.
"""

from __future__ import annotations

import ast
import math
import warnings
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Callable, Mapping

import numpy as np

from clspectra.errors import A1Violation, ContractError, DivergentMomentError

HEADER = "# clspectra-degseq v1"
MODELS = ("constant", "exponential", "power_law", "custom")
SAMPLINGS = ("uniform_random", "quantile_grid")


@dataclass(frozen=True, eq=False)
class DegreeSequence:
    """Immutable expected-degree vector with its derived scalars.

    ``rho``, ``w_max``, ``w_min`` and ``d2avg`` (the second-order average
    degree ``rho * ||w||^2``) are computed once at construction.
    """

    w: np.ndarray
    model: str = "custom"
    params: Mapping[str, Any] = field(default_factory=dict)
    rho: float = field(init=False)
    w_max: float = field(init=False)
    w_min: float = field(init=False)
    d2avg: float = field(init=False)

    def __post_init__(self):
        w = np.array(self.w, dtype=float).ravel()
        if w.size == 0:
            raise ContractError("degree sequence is empty")
        if not np.all(np.isfinite(w)):
            raise ContractError("degree sequence contains non-finite entries")
        if np.any(w < 0):
            raise ContractError("expected degrees must be non-negative")
        volume = math.fsum(w)
        if volume <= 0:
            raise ContractError("expected degrees sum to zero")
        if self.model not in MODELS:
            raise ContractError(f"unknown model tag {self.model!r}")
        w.setflags(write=False)
        rho = 1.0 / volume
        object.__setattr__(self, "w", w)
        object.__setattr__(self, "params", dict(self.params))
        object.__setattr__(self, "rho", rho)
        object.__setattr__(self, "w_max", float(w.max()))
        object.__setattr__(self, "w_min", float(w.min()))
        object.__setattr__(self, "d2avg", rho * math.fsum(w * w))

    @property
    def n(self) -> int:
        return int(self.w.size)

    @property
    def volume(self) -> float:
        return 1.0 / self.rho

    @property
    def max_edge_probability(self) -> float:
        return self.rho * self.w_max**2

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "w": self.w.tolist(),
            "rho": self.rho,
            "w_max": self.w_max,
            "w_min": self.w_min,
            "d2avg": self.d2avg,
            "model": {"tag": self.model, "params": dict(self.params)},
        }

    @classmethod
    def from_dict(cls, data: Mapping) -> "DegreeSequence":
        model = data.get("model", "custom")
        if isinstance(model, Mapping):
            return cls(np.asarray(data["w"], float), model.get("tag", "custom"), model.get("params", {}))
        return cls(np.asarray(data["w"], float), model)


@dataclass(frozen=True)
class PowerLawParams:
    """Chung-Lu power-law parameters: exponent, max degree, average degree."""

    beta: float
    Delta: float
    d: float
    n: int | None = None

    def __post_init__(self):
        if not self.beta > 2:
            raise ContractError(f"power-law exponent must exceed 2, got {self.beta}")
        if not (self.Delta >= self.d > 0):
            raise ContractError("need Delta >= d > 0")

    @property
    def ratio(self) -> float:
        """``d (beta-2) / (Delta (beta-1))``; equals ``(i0/n)**(1/(beta-1))``."""
        b = self.beta
        return self.d * (b - 2) / (self.Delta * (b - 1))

    @property
    def c(self) -> float:
        b = self.beta
        return (b - 2) / (b - 1) * self.d * self._n() ** (1 / (b - 1))

    @property
    def i0(self) -> float:
        return self._n() * self.ratio ** (self.beta - 1)

    def _n(self) -> int:
        if self.n is None:
            raise ContractError("PowerLawParams.n is required for c and i0")
        return self.n


@dataclass(frozen=True)
class ExponentialParams:
    """``w_i = Delta_n * exp(-alpha * x_i)`` with ``x_i`` in [0, 1]."""

    Delta_n: float
    alpha: float
    sampling: str = "uniform_random"

    def __post_init__(self):
        if not self.alpha > 0:
            raise ContractError(f"alpha must be positive, got {self.alpha}")
        if not self.Delta_n > 0:
            raise ContractError(f"Delta_n must be positive, got {self.Delta_n}")
        if self.sampling not in SAMPLINGS:
            raise ContractError(f"sampling must be one of {SAMPLINGS}")


def make_constant(n: int, p: float) -> DegreeSequence:
    """Erdos-Renyi as a Chung-Lu graph: every expected degree equals ``n p``."""
    if n < 1:
        raise ContractError("n must be positive")
    if not 0 < p < 1:
        raise ContractError(f"p must lie in (0, 1), got {p}")
    return DegreeSequence(np.full(n, n * p), "constant", {"n": n, "p": p})


def make_exponential(n: int, params: ExponentialParams, seed: int | None = None) -> DegreeSequence:
    if n < 1:
        raise ContractError("n must be positive")
    if params.sampling == "quantile_grid":
        x = (np.arange(1, n + 1) - 0.5) / n
    else:
        x = np.random.default_rng(seed).random(n)
    w = params.Delta_n * np.exp(-params.alpha * x)
    meta = {"n": n, "Delta_n": params.Delta_n, "alpha": params.alpha, "sampling": params.sampling, "seed": seed}
    return DegreeSequence(w, "exponential", meta)


def make_power_law(
    n: int,
    beta: float,
    Delta: float,
    d: float,
    *,
    index_shift: float = 1.0,
    validate: bool = True,
) -> DegreeSequence:
    """Power-law expected degrees ``w_i = c (i0 + i - 1 + index_shift)^(-1/(beta-1))``.

    The default ``index_shift=1`` evaluates the profile at ``i0 + 1, ..., i0 + n``
    so that the first weight stays finite even when ``i0`` is tiny.  With
    ``index_shift=0`` the profile starts exactly at ``i0`` and the maximum
    weight equals ``Delta``; that variant can break the A1 bound
    ``rho * w_max^2 < 1`` and needs ``validate=False``.
    """
    params = PowerLawParams(beta, Delta, d, n)
    idx = params.i0 + np.arange(n) + index_shift
    if idx[0] <= 0:
        raise ContractError("index_shift leaves a non-positive profile index")
    w = params.c * idx ** (-1.0 / (beta - 1))
    meta = {"n": n, "beta": beta, "Delta": Delta, "d": d, "index_shift": index_shift}
    ds = DegreeSequence(w, "power_law", meta)
    if validate and ds.max_edge_probability >= 1:
        raise A1Violation(
            f"A1 violated: rho * w_max^2 = {ds.max_edge_probability:.6g} >= 1 "
            f"for beta={beta}, Delta={Delta}, d={d}, n={n}"
        )
    return ds


def load_custom(path: str | Path) -> DegreeSequence:
    """Read one non-negative decimal per line (commas also separate values).

    Blank lines and ``#`` comment lines (such as the ``# clspectra-degseq v1``
    header) are skipped.
    """
    values = []
    text = Path(path).read_text(encoding="utf-8")
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        for token in line.replace(",", " ").split():
            try:
                v = float(token)
            except ValueError:
                raise ContractError(f"{path}:{lineno}: non-numeric token {token!r}") from None
            if not math.isfinite(v):
                raise ContractError(f"{path}:{lineno}: non-finite value {token!r}")
            if v < 0:
                raise ContractError(f"{path}:{lineno}: negative expected degree {v}")
            values.append(v)
    if not values:
        raise ContractError(f"{path}: no expected degrees found")
    return DegreeSequence(np.array(values), "custom", {"source": str(path)})


def power_sums(ds: DegreeSequence, k_max: int) -> np.ndarray:
    """``S_k = sum_i w_i^k`` for ``k = 1..k_max``, with correctly rounded sums.

    Terms are scaled by ``w_max`` before summation so that large powers do
    not overflow prematurely; the result itself may still overflow to inf.
    """
    if k_max < 1:
        raise ContractError("k_max must be >= 1")
    scale = ds.w_max
    u = ds.w / scale
    out = np.empty(k_max)
    term = np.ones_like(u)
    for k in range(1, k_max + 1):
        term = term * u
        try:
            factor = scale**k
        except OverflowError:
            factor = math.inf
        out[k - 1] = math.fsum(term) * factor
    return out


def lambda_estimates(ds: DegreeSequence, k_max: int) -> np.ndarray:
    """Finite-n normalised power sums ``(1/n) sum_i (n rho w_i)^k``, k = 1..k_max."""
    if k_max < 1:
        raise ContractError("k_max must be >= 1")
    v = ds.n * ds.rho * ds.w
    out = np.empty(k_max)
    term = np.ones_like(v)
    for k in range(1, k_max + 1):
        term = term * v
        out[k - 1] = math.fsum(term) / ds.n
    return out


def powerlaw_f(ratio: float, beta: float, k: float) -> float:
    """``(1/n) sum w_i^k ~ d^k f`` for the power-law profile at finite Delta/d.

    ``ratio`` is ``d/Delta``.
    """
    b1 = beta - 1
    if abs(k - b1) < 1e-12:
        raise DivergentMomentError(f"divergent moment boundary: k = beta - 1 = {b1}")
    x = ratio * (beta - 2) / b1
    bracket = (x**b1 + 1) ** ((b1 - k) / b1) - x ** (b1 - k)
    return ((beta - 2) / b1) ** k * b1 / (b1 - k) * bracket


def powerlaw_f_asymptotic(beta: float, k: float) -> float:
    """The ``Delta >> d`` limit of :func:`powerlaw_f`; finite only for k < beta - 1."""
    b1 = beta - 1
    if k >= b1 - 1e-12:
        raise DivergentMomentError(
            f"asymptotic power-law moment undefined for k={k} >= beta - 1 = {b1}"
        )
    return ((beta - 2) / b1) ** k * b1 / (b1 - k)


def lambda_closed_form(model_params: Any, k: int, *, asymptotic: bool = False) -> float:
    """Limiting ``Lambda_k`` for a parametric model.

    ``model_params`` is an :class:`ExponentialParams`, a :class:`PowerLawParams`
    or the string ``"constant"``.  For power laws ``asymptotic=True`` uses the
    ``Delta >> d`` simplification, otherwise the finite ``d/Delta`` profile.
    """
    if k < 1:
        raise ContractError("k must be >= 1")
    if model_params == "constant":
        return 1.0
    if isinstance(model_params, ExponentialParams):
        a = model_params.alpha
        # -expm1(-x) == 1 - exp(-x) without cancellation for small alpha
        return a ** (k - 1) * -math.expm1(-k * a) / (k * (-math.expm1(-a)) ** k)
    if isinstance(model_params, PowerLawParams):
        beta = model_params.beta
        if asymptotic:
            return powerlaw_f_asymptotic(beta, k)
        if k > beta - 1:
            warnings.warn(
                f"k={k} exceeds beta-1={beta - 1}: moment diverges as Delta/d grows, "
                "asymptotic form undefined; returning finite-Delta value",
                RuntimeWarning,
                stacklevel=2,
            )
        ratio = model_params.d / model_params.Delta
        return powerlaw_f(ratio, beta, k) / powerlaw_f(ratio, beta, 1) ** k
    raise ContractError(f"no closed form for model {model_params!r}")


def closed_form_params(ds: DegreeSequence) -> Any:
    """Recover the parameter object of a parametric sequence."""
    p = ds.params
    if ds.model == "constant":
        return "constant"
    if ds.model == "exponential":
        return ExponentialParams(p["Delta_n"], p["alpha"], p.get("sampling", "uniform_random"))
    if ds.model == "power_law":
        return PowerLawParams(p["beta"], p["Delta"], p["d"], p.get("n"))
    raise ContractError("closed-form Lambda needs a parametric model, got a custom sequence")


_EXPR_FUNCS: dict[str, Callable] = {"log": math.log, "sqrt": math.sqrt, "exp": math.exp}


def eval_in_n(value: Any, n: int) -> float:
    """Evaluate a parameter that may depend on the graph size.

    Accepts numbers, callables of ``n`` and arithmetic strings in ``n`` such as
    ``"2*log(n)/n"``.
    """
    if callable(value):
        return float(value(n))
    if isinstance(value, str):
        tree = ast.parse(value, mode="eval")
        for node in ast.walk(tree):
            if isinstance(node, ast.Name) and node.id not in ("n", *_EXPR_FUNCS):
                raise ContractError(f"unknown name {node.id!r} in expression {value!r}")
            if isinstance(node, (ast.Attribute, ast.Subscript, ast.Lambda)):
                raise ContractError(f"unsupported syntax in expression {value!r}")
        return float(eval(compile(tree, "<param>", "eval"), {"__builtins__": {}}, {"n": n, **_EXPR_FUNCS}))
    return float(value)


def sequence_from_model(model: Mapping[str, Any], n: int) -> DegreeSequence:
    """Build the size-``n`` member of a parametric family.

    ``model`` holds ``"model"`` (constant | exponential | power_law) and the
    family's parameters, each of which may depend on ``n`` (see :func:`eval_in_n`).
    """
    kind = model.get("model")
    if kind == "constant":
        return make_constant(n, eval_in_n(model["p"], n))
    if kind == "exponential":
        params = ExponentialParams(
            eval_in_n(model["Delta_n"], n),
            eval_in_n(model["alpha"], n),
            model.get("sampling", "quantile_grid"),
        )
        return make_exponential(n, params, model.get("seed"))
    if kind == "power_law":
        return make_power_law(
            n,
            eval_in_n(model["beta"], n),
            eval_in_n(model["Delta"], n),
            eval_in_n(model["d"], n),
            index_shift=float(model.get("index_shift", 1.0)),
        )
    if kind in ("custom", "file"):
        raise ContractError("trend diagnostics require a parametric model")
    raise ContractError(f"unknown model {kind!r}")
