"""Exhaustive enumeration of minimal generator sets at small n.

Minimal generator sets of an n x n matrix are exactly the spanning trees of
K_n; those with minimal total handicap are the Hamiltonian paths.
"""

from __future__ import annotations

import heapq
import itertools
import math
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .core import DomainError
from .genset import ComparisonGraph, GeneratorSet, connected_components

MAX_ENUMERATION_N = 9
MAX_CLASSIFY_N = 6
MAX_CLASSIFY_SUBSETS = 10**6


@dataclass(frozen=True)
class TreeEdgeSet:
    n: int
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self):
        edges = tuple(sorted((min(u, v), max(u, v)) for u, v in self.edges))
        object.__setattr__(self, "edges", edges)

    def labeled(self, values: float | Sequence[float] = 1.0) -> GeneratorSet:
        """Generator set on these edges; one value for all or one per edge."""
        if isinstance(values, (int, float)):
            values = [values] * len(self.edges)
        return GeneratorSet(self.n, tuple((i, j, v) for (i, j), v in zip(self.edges, values, strict=True)))

    def __str__(self):
        return " ".join(f"{i}-{j}" for i, j in self.edges)


def upper_pairs(n: int) -> list[tuple[int, int]]:
    """Positions of C_n in row-major order: (1,2), (1,3), ..., (n-1,n)."""
    return [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)]


def prufer_decode(seq: Sequence[int], n: int | None = None) -> TreeEdgeSet:
    """Labeled tree on 1..n with the given Prufer sequence (length n - 2)."""
    if n is None:
        n = len(seq) + 2
    if n < 2 or len(seq) != n - 2:
        raise DomainError(f"Prufer sequence for n={n} must have length {n - 2}")
    for x in seq:
        if not 1 <= x <= n:
            raise DomainError(f"Prufer label {x} out of range 1..{n}")
    degree = [1] * (n + 1)
    for x in seq:
        degree[x] += 1
    leaves = [v for v in range(1, n + 1) if degree[v] == 1]
    heapq.heapify(leaves)
    edges = []
    for x in seq:
        leaf = heapq.heappop(leaves)
        edges.append((leaf, x))
        degree[x] -= 1
        if degree[x] == 1:
            heapq.heappush(leaves, x)
    u, v = heapq.heappop(leaves), heapq.heappop(leaves)
    edges.append((u, v))
    return TreeEdgeSet(n, tuple(edges))


def prufer_encode(tree: TreeEdgeSet) -> tuple[int, ...]:
    n = tree.n
    if len(tree.edges) != n - 1:
        raise DomainError("not a spanning tree: wrong edge count")
    adj: dict[int, set[int]] = {v: set() for v in range(1, n + 1)}
    for u, v in tree.edges:
        adj[u].add(v)
        adj[v].add(u)
    leaves = [v for v in adj if len(adj[v]) == 1]
    heapq.heapify(leaves)
    seq = []
    for _ in range(n - 2):
        leaf = heapq.heappop(leaves)
        (parent,) = adj.pop(leaf)
        adj[parent].discard(leaf)
        seq.append(parent)
        if len(adj[parent]) == 1:
            heapq.heappush(leaves, parent)
    return tuple(seq)


def _check_order(n: int) -> None:
    if not 2 <= n <= MAX_ENUMERATION_N:
        raise DomainError(f"enumeration requires 2 <= n <= {MAX_ENUMERATION_N}, got {n}")


def enumerate_minimal_generator_sets(n: int) -> Iterator[TreeEdgeSet]:
    """All n^(n-2) spanning trees of K_n, lexicographic in Prufer order."""
    _check_order(n)
    for seq in itertools.product(range(1, n + 1), repeat=n - 2):
        yield prufer_decode(seq, n)


def enumerate_min_handicap_sets(n: int) -> Iterator[TreeEdgeSet]:
    """All n!/2 Hamiltonian paths of K_n (each vertex order up to reversal)."""
    _check_order(n)
    for perm in itertools.permutations(range(1, n + 1)):
        if perm[0] < perm[-1]:
            yield TreeEdgeSet(n, tuple(zip(perm, perm[1:])))


PATH = "path"
TREE = "tree"
CONNECTED_CYCLIC = "connected-cyclic"
FOREST = "forest"
DISCONNECTED_CYCLIC = "disconnected-cyclic"


def classify_edges(n: int, edges: Iterable[tuple[int, int]]) -> str:
    """Shape class of the graph on 1..n with the given edges.

    One of: path (Hamiltonian), tree (spanning, not a path),
    connected-cyclic, forest (disconnected, acyclic), disconnected-cyclic.
    """
    g = ComparisonGraph(n, {e: 1.0 for e in edges})
    ncomp = len(connected_components(g))
    cyclic = len(g.edges) > n - ncomp
    if ncomp == 1:
        if cyclic:
            return CONNECTED_CYCLIC
        degrees = [0] * (n + 1)
        for i, j in g.edges:
            degrees[i] += 1
            degrees[j] += 1
        return PATH if max(degrees) <= 2 else TREE
    return DISCONNECTED_CYCLIC if cyclic else FOREST


@dataclass(frozen=True)
class SubsetClassification:
    n: int
    k: int
    total: int
    generating: int
    trees: int
    paths: int
    cycles: int

    def table(self) -> str:
        rows = [
            ("n", self.n),
            ("subset size", self.k),
            ("total", self.total),
            ("generating", self.generating),
            ("trees", self.trees),
            ("hamiltonian paths", self.paths),
            ("containing a cycle", self.cycles),
        ]
        width = max(len(name) for name, _ in rows)
        return "\n".join(f"{name:<{width}}  {value:>8}" for name, value in rows)


def _check_classify(n: int, k: int) -> int:
    if not 1 <= n <= MAX_CLASSIFY_N:
        raise DomainError(f"classification requires 1 <= n <= {MAX_CLASSIFY_N}, got {n}")
    m = n * (n - 1) // 2
    if not 0 <= k <= m:
        raise DomainError(f"subset size must be in 0..{m}, got {k}")
    total = math.comb(m, k)
    if total > MAX_CLASSIFY_SUBSETS:
        raise DomainError(f"{total} subsets exceeds the scan limit {MAX_CLASSIFY_SUBSETS}")
    return total


def iter_subset_classes(n: int, k: int) -> Iterator[tuple[tuple[int, ...], str]]:
    """Yield (1-based C_n positions, shape class) for every k-subset of C_n."""
    _check_classify(n, k)
    pairs = upper_pairs(n)
    for idx in itertools.combinations(range(len(pairs)), k):
        yield tuple(x + 1 for x in idx), classify_edges(n, [pairs[x] for x in idx])


def classify_subsets(n: int, k: int) -> SubsetClassification:
    total = _check_classify(n, k)
    counts = dict.fromkeys((PATH, TREE, CONNECTED_CYCLIC, FOREST, DISCONNECTED_CYCLIC), 0)
    for _, cls in iter_subset_classes(n, k):
        counts[cls] += 1
    trees = counts[PATH] + counts[TREE]
    return SubsetClassification(
        n=n,
        k=k,
        total=total,
        generating=trees + counts[CONNECTED_CYCLIC],
        trees=trees,
        paths=counts[PATH],
        cycles=counts[CONNECTED_CYCLIC] + counts[DISCONNECTED_CYCLIC],
    )
