"""On-disk formats: degree-sequence JSON/text, edge lists and CSV tables."""

from __future__ import annotations

import csv
import hashlib
import json
import re
from pathlib import Path
from typing import Any, Iterable, Mapping

import numpy as np

from clspectra import __version__
from clspectra.degree_models import DegreeSequence, load_custom
from clspectra.errors import ContractError
from clspectra.graph_sampler import RNG_ID, AdjacencySample

GRAPH_HEADER = "# clspectra-graph v1"
_HEADER_RE = re.compile(r"^# clspectra-graph v1 n=(\d+) seed=(\S+) rng=(\S+)\s*$")


def config_hash(config: Mapping[str, Any]) -> str:
    blob = json.dumps(config, sort_keys=True, default=str, separators=(",", ":"))
    return hashlib.sha256(blob.encode()).hexdigest()[:16]


def metadata(config: Mapping[str, Any], seed: int | None = None, normalization: str | None = None) -> dict:
    return {
        "tool": "clspectra",
        "version": __version__,
        "config_hash": config_hash(config),
        "seed": seed,
        "rng": RNG_ID,
        "normalization": normalization,
    }


def _jsonable(obj):
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    if isinstance(obj, (np.floating, np.integer, np.bool_)):
        return obj.item()
    if hasattr(obj, "value") and hasattr(obj, "name"):  # enums
        return obj.value
    raise TypeError(f"cannot serialise {type(obj).__name__}")


def dumps(payload: Any) -> str:
    return json.dumps(payload, indent=2, sort_keys=True, default=_jsonable) + "\n"


def write_json(path: str | Path, payload: Any) -> None:
    Path(path).write_text(dumps(payload), encoding="utf-8")


def read_json(path: str | Path) -> Any:
    return json.loads(Path(path).read_text(encoding="utf-8"))


def read_sequence(path: str | Path) -> DegreeSequence:
    """Load a degree sequence from ``seq.json`` or a plain one-per-line text file."""
    path = Path(path)
    text = path.read_text(encoding="utf-8").lstrip()
    if text.startswith("{"):
        data = json.loads(text)
        if "w" not in data:
            raise ContractError(f"{path}: JSON sequence lacks the 'w' array")
        return DegreeSequence.from_dict(data)
    return load_custom(path)


def write_edges(smp: AdjacencySample, path: str | Path) -> None:
    lines = [f"{GRAPH_HEADER} n={smp.n} seed={smp.seed} rng={smp.rng_id}"]
    lines.extend(f"{i} {j}" for i, j in smp.edges.tolist())
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def read_edges(path: str | Path, ds: DegreeSequence) -> AdjacencySample:
    """Rebuild a sample from its edge list and the degree sequence it was drawn from."""
    path = Path(path)
    lines = path.read_text(encoding="utf-8").splitlines()
    if not lines:
        raise ContractError(f"{path}: empty graph file")
    m = _HEADER_RE.match(lines[0])
    if not m:
        raise ContractError(f"{path}: missing '{GRAPH_HEADER} n=.. seed=.. rng=..' header")
    n = int(m.group(1))
    seed = None if m.group(2) == "None" else int(m.group(2))
    if n != ds.n:
        raise ContractError(f"{path}: graph has n={n} but the sequence has n={ds.n}")
    pairs = [ln.split() for ln in lines[1:] if ln.strip() and not ln.startswith("#")]
    edges = np.array(pairs, dtype=np.int64).reshape(-1, 2)
    if edges.size and (edges.min() < 0 or edges.max() >= n or np.any(edges[:, 0] > edges[:, 1])):
        raise ContractError(f"{path}: edge endpoints must satisfy 0 <= i <= j < n")
    edges.setflags(write=False)
    return AdjacencySample(n, edges, ds.w, ds.rho, seed, m.group(3))


def write_csv(path: str | Path, header: Iterable[str], rows: Iterable[Iterable[Any]]) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(list(header))
        for row in rows:
            writer.writerow([_cell(v) for v in row])


def _cell(v):
    if isinstance(v, np.generic):
        v = v.item()
    return repr(v) if isinstance(v, float) else v
