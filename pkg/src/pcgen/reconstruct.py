"""Rebuild a consistent PC matrix from a generating set of entries."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .core import DomainError, PCMatrix
from .genset import (
    ComparisonGraph,
    GeneratorSet,
    build_graph,
    is_tree,
    spanning_tree,
    unreached_vertices,
)


class NotGenerating(ValueError):
    """The entries do not determine the whole matrix."""

    def __init__(self, unreached: Sequence[int] = (), reason: str | None = None):
        self.unreached = list(unreached)
        msg = "B does not generate A"
        if reason:
            msg += f" ({reason})"
        if self.unreached:
            msg += "; unreached vertices: " + ", ".join(map(str, self.unreached))
        super().__init__(msg)


@dataclass(frozen=True)
class PrincipalGenerators:
    """Superdiagonal ratios a_{k,k+1}, k = 1..n-1."""

    values: tuple[float, ...]

    def __post_init__(self):
        vals = tuple(float(v) for v in self.values)
        if not all(math.isfinite(v) and v > 0 for v in vals):
            raise DomainError("principal generators must be finite and strictly positive")
        object.__setattr__(self, "values", vals)

    @property
    def n(self) -> int:
        return len(self.values) + 1

    def __len__(self):
        return len(self.values)

    def __iter__(self):
        return iter(self.values)


@dataclass(frozen=True)
class ReconstructionResult:
    matrix: PCMatrix
    pgs: PrincipalGenerators
    used_entries: GeneratorSet
    residual: float

    def summary(self, input_size: int | None = None) -> str:
        lines = [
            f"n = {self.matrix.n}",
            "used entries: " + " ".join(f"{e.i}-{e.j}" for e in self.used_entries),
        ]
        if input_size is not None:
            lines.append(f"unused entries: {input_size - len(self.used_entries)}")
        lines.append(f"residual = {self.residual!r}")
        return "\n".join(lines)


def _matrix_from_log_potentials(s: np.ndarray) -> PCMatrix:
    # m_ij = exp(s_j - s_i) above the diagonal, reciprocals below
    n = s.size
    upper = np.exp(s[None, :] - s[:, None])
    m = np.ones((n, n))
    iu = np.triu_indices(n, 1)
    m[iu] = upper[iu]
    m.T[iu] = 1.0 / upper[iu]
    return PCMatrix(m)


def reconstruct_from_pgs(pgs: PrincipalGenerators | Sequence[float]) -> PCMatrix:
    """Full matrix with a_ij = prod_{k=i}^{j-1} a_{k,k+1} for i < j.

    Products are taken as differences of prefix sums of log-PGs, so each
    entry costs O(1).
    """
    if not isinstance(pgs, PrincipalGenerators):
        pgs = PrincipalGenerators(tuple(pgs))
    s = np.concatenate(([0.0], np.cumsum(np.log(pgs.values))))
    m = _matrix_from_log_potentials(s)
    # superdiagonal reproduces the input bit-for-bit
    a = np.array(m.entries)
    for k, v in enumerate(pgs.values):
        a[k, k + 1] = v
        a[k + 1, k] = 1.0 / v
    return PCMatrix(a)


def _tree_log_potentials(tree: ComparisonGraph) -> np.ndarray:
    """Potentials s with log a_ij = s_j - s_i on every tree edge, s_1 = 0."""
    adj = tree.adjacency()
    s = np.zeros(tree.n)
    seen = {1}
    stack = [1]
    while stack:
        u = stack.pop()
        for w in adj[u]:
            if w in seen:
                continue
            seen.add(w)
            # log m_uw = s_w - s_u
            s[w - 1] = s[u - 1] + math.log(tree.label(u, w))
            stack.append(w)
    return s


def solve_log_system(b: GeneratorSet) -> PrincipalGenerators:
    """Principal generators x_k solving log a_ij = sum_{k=i}^{j-1} x_k over B.

    B must be a spanning tree. The system is solved by one traversal: the
    prefix sums of x are potentials on the vertices, fixed edge by edge.
    """
    g = build_graph(b)
    if not is_tree(g):
        missing = unreached_vertices(g)
        reason = "not a tree" if not missing else None
        raise NotGenerating(missing, reason)
    s = _tree_log_potentials(g)
    return PrincipalGenerators(tuple(np.exp(np.diff(s))))


def reconstruct(b: GeneratorSet) -> ReconstructionResult:
    """Reconstruct the consistent matrix generated by B.

    Extra entries beyond a DFS spanning tree are not used; their worst
    relative disagreement with the result is reported as ``residual``.
    Entries on the tree are reproduced exactly up to round-off.
    """
    n = b.n
    if n == 1:
        return ReconstructionResult(PCMatrix(np.ones((1, 1))), PrincipalGenerators(()), b, 0.0)
    g = build_graph(b)
    tree = spanning_tree(g)
    if len(tree.edges) < n - 1:
        raise NotGenerating(unreached_vertices(g))
    s = _tree_log_potentials(tree)
    a = np.array(_matrix_from_log_potentials(s).entries)
    used = tree.to_generator_set()
    for e in used:
        a[e.i - 1, e.j - 1] = e.value
        a[e.j - 1, e.i - 1] = 1.0 / e.value
    matrix = PCMatrix(a)
    residual = 0.0
    for e in b:
        if e.pair not in tree.edges:
            residual = max(residual, abs(a[e.i - 1, e.j - 1] / e.value - 1.0))
    pgs = PrincipalGenerators(tuple(np.exp(np.diff(s))))
    return ReconstructionResult(matrix, pgs, used, residual)


def tree_path_reconstruct(b: GeneratorSet) -> PCMatrix:
    """Reference reconstruction by direct path products on the tree.

    For every source vertex, walk the tree and multiply edge ratios along
    the unique path; no logarithms or linear algebra involved.
    """
    g = build_graph(b)
    if not is_tree(g):
        raise NotGenerating(unreached_vertices(g), "not a tree")
    n = b.n
    adj = g.adjacency()
    m = np.ones((n, n))
    for src in range(1, n + 1):
        ratio = {src: 1.0}
        stack = [src]
        while stack:
            u = stack.pop()
            for w in adj[u]:
                if w not in ratio:
                    ratio[w] = ratio[u] * g.label(u, w)
                    stack.append(w)
        for v, r in ratio.items():
            m[src - 1, v - 1] = r
    return PCMatrix(m)
