"""Brute-force references used to check the fast paths.

Both routines enumerate everything they count, so they are only usable at
toy sizes: ordered trees up to 8 edges and graphs up to 4 vertices.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass

import numpy as np

from clspectra.degree_models import DegreeSequence
from clspectra.errors import ContractError
from clspectra.graph_sampler import MatrixKind

TREE_CAP = 8
GRAPH_CAP = 4
MOMENT_CAP = 6


@dataclass(frozen=True)
class OrderedTree:
    """Rooted ordered tree; vertices are numbered in depth-first (preorder) order.

    ``parent[0]`` is ``-1`` for the root.
    """

    s: int
    parent: tuple[int, ...]

    def degrees(self) -> list[int]:
        deg = [0] * (self.s + 1)
        for v, p in enumerate(self.parent):
            if p >= 0:
                deg[v] += 1
                deg[p] += 1
        return deg

    def degree_distribution(self) -> tuple[int, ...]:
        r = [0] * self.s
        for d in self.degrees():
            r[d - 1] += 1
        return tuple(r)


def dyck_paths(s: int):
    """All +1/-1 sequences of length 2s whose partial sums stay >= 0 and end at 0."""

    def extend(path, ups, height):
        if len(path) == 2 * s:
            yield tuple(path)
            return
        if ups < s:
            path.append(1)
            yield from extend(path, ups + 1, height + 1)
            path.pop()
        if height > 0:
            path.append(-1)
            yield from extend(path, ups, height - 1)
            path.pop()

    yield from extend([], 0, 0)


def tree_from_dyck(path) -> OrderedTree:
    """Up-step = descend to a new rightmost child, down-step = return to the parent."""
    parent = [-1]
    stack = [0]
    for step in path:
        if step == 1:
            parent.append(stack[-1])
            stack.append(len(parent) - 1)
        else:
            stack.pop()
    return OrderedTree(len(path) // 2, tuple(parent))


def enumerate_ordered_trees(s: int) -> list[OrderedTree]:
    if not 1 <= s <= TREE_CAP:
        raise ContractError(f"exhaustive tree enumeration is capped at s <= {TREE_CAP}")
    return [tree_from_dyck(p) for p in dyck_paths(s)]


def tree_counts_by_degree(s: int) -> Counter:
    return Counter(t.degree_distribution() for t in enumerate_ordered_trees(s))


def exact_expected_moment(
    ds: DegreeSequence,
    k: int,
    matrix_kind: MatrixKind | str = MatrixKind.CENTRALIZED,
) -> float:
    """``E{trace(M^k)/n}`` by summing over all ``2^(n(n+1)/2)`` edge outcomes."""
    n = ds.n
    if n > GRAPH_CAP:
        raise ContractError(f"exact expectation is capped at n <= {GRAPH_CAP}")
    if not 1 <= k <= MOMENT_CAP:
        raise ContractError(f"exact expectation is capped at k <= {MOMENT_CAP}")
    kind = MatrixKind(matrix_kind)
    w, rho = ds.w, ds.rho
    pairs = [(i, j) for i in range(n) for j in range(i, n)]
    probs = [rho * w[i] * w[j] for i, j in pairs]
    if max(probs) >= 1:
        raise ContractError("edge probability >= 1")
    scale = np.sqrt(n * rho) if kind.normalized else 1.0
    mean = (np.sqrt(n) * rho**1.5 if kind.normalized else rho) * np.outer(w, w)
    total = 0.0
    for outcome in itertools.product((0, 1), repeat=len(pairs)):
        prob = 1.0
        M = np.zeros((n, n))
        for (i, j), a, p in zip(pairs, outcome, probs):
            prob *= p if a else 1 - p
            if a:
                M[i, j] = M[j, i] = scale
        if kind.centralized:
            M = M - mean
        total += prob * np.trace(np.linalg.matrix_power(M, k)) / n
    return float(total)


def outcome_probability_total(ds: DegreeSequence) -> float:
    """Sum of all outcome probabilities (should be 1)."""
    n = ds.n
    probs = [ds.rho * ds.w[i] * ds.w[j] for i in range(n) for j in range(i, n)]
    return float(sum(np.prod([p if a else 1 - p for a, p in zip(o, probs)])
                     for o in itertools.product((0, 1), repeat=len(probs))))
