"""Generator sets, their comparison graphs, and frequency/handicap metrics.

Vertices (entities) are 1-based throughout, matching the generator file
format. A generator entry (i, j, value) with i < j stands for the matrix
entry a_ij; the induced graph G_B has one undirected edge i-j per entry.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Iterator, Mapping, NamedTuple

from .core import DEFAULT_TOL, DomainError


class GeneratorFileError(ValueError):
    def __init__(self, message: str, lineno: int | None = None):
        self.lineno = lineno
        if lineno is not None:
            message = f"line {lineno}: {message}"
        super().__init__(message)


class GeneratorEntry(NamedTuple):
    i: int
    j: int
    value: float

    @property
    def pair(self) -> tuple[int, int]:
        return (self.i, self.j)


def normalize_entry(n: int, i: int, j: int, value: float) -> GeneratorEntry:
    """Validate one entry and orient it so that i < j.

    An entry given as (j, i, v) with j > i is stored as (i, j, 1/v).
    """
    if isinstance(i, bool) or isinstance(j, bool) or int(i) != i or int(j) != j:
        raise DomainError(f"indices must be integers, got ({i!r}, {j!r})")
    i, j = int(i), int(j)
    value = float(value)
    if not (1 <= i <= n and 1 <= j <= n):
        raise DomainError(f"entry ({i}, {j}) out of range 1..{n}")
    if i == j:
        raise DomainError(f"diagonal entry ({i}, {i}) is not a generator")
    if not math.isfinite(value) or value <= 0:
        raise DomainError(f"entry ({i}, {j}) has non-positive or non-finite value {value!r}")
    if i > j:
        return GeneratorEntry(j, i, 1.0 / value)
    return GeneratorEntry(i, j, value)


def _merge(store: dict, e: GeneratorEntry, rel_tol: float) -> None:
    old = store.get(e.pair)
    if old is None:
        store[e.pair] = e
    elif abs(e.value / old.value - 1.0) > rel_tol:
        raise DomainError(
            f"conflicting duplicate entries for ({e.i}, {e.j}): {old.value!r} vs {e.value!r}"
        )


@dataclass(frozen=True)
class GeneratorSet:
    """A set B of above-diagonal entries of an n x n PC matrix.

    Entries are kept sorted by (i, j); use :meth:`from_entries` to build one
    from raw triples with reciprocal flipping and duplicate handling.
    """

    n: int
    entries: tuple[GeneratorEntry, ...] = ()

    def __post_init__(self):
        if self.n < 1:
            raise DomainError(f"matrix order must be >= 1, got {self.n}")
        store: dict = {}
        for e in self.entries:
            _merge(store, normalize_entry(self.n, *e), DEFAULT_TOL)
        object.__setattr__(self, "entries", tuple(sorted(store.values())))

    @classmethod
    def from_entries(cls, n: int, entries: Iterable, rel_tol: float = DEFAULT_TOL) -> "GeneratorSet":
        store: dict = {}
        for e in entries:
            _merge(store, normalize_entry(n, *e), rel_tol)
        return cls(n, tuple(store.values()))

    @classmethod
    def from_pairs(cls, n: int, pairs: Iterable[tuple[int, int]], value: float = 1.0) -> "GeneratorSet":
        return cls(n, tuple((i, j, value) for i, j in pairs))

    @classmethod
    def principal(cls, values: Iterable[float]) -> "GeneratorSet":
        """The superdiagonal entries a_{k,k+1}."""
        values = list(values)
        return cls(len(values) + 1, tuple((k, k + 1, v) for k, v in enumerate(values, start=1)))

    def __len__(self):
        return len(self.entries)

    def __iter__(self) -> Iterator[GeneratorEntry]:
        return iter(self.entries)

    @property
    def pairs(self) -> frozenset[tuple[int, int]]:
        return frozenset(e.pair for e in self.entries)

    def subset(self, pairs: Iterable[tuple[int, int]]) -> "GeneratorSet":
        keep = set(pairs)
        return GeneratorSet(self.n, tuple(e for e in self.entries if e.pair in keep))


@dataclass(frozen=True)
class ComparisonGraph:
    """Undirected graph on vertices 1..n; edge (i, j), i < j, carries label a_ij."""

    n: int
    edges: Mapping[tuple[int, int], float] = field(default_factory=dict)

    def __post_init__(self):
        for (i, j), label in self.edges.items():
            if not (1 <= i < j <= self.n):
                raise DomainError(f"bad edge ({i}, {j}) for n={self.n}")
            if not label > 0:
                raise DomainError(f"edge ({i}, {j}) label must be positive")
        object.__setattr__(self, "edges", dict(sorted(self.edges.items())))

    @property
    def vertices(self) -> range:
        return range(1, self.n + 1)

    def adjacency(self) -> dict[int, list[int]]:
        """Neighbour lists in ascending order."""
        adj: dict[int, list[int]] = {v: [] for v in self.vertices}
        for i, j in self.edges:
            adj[i].append(j)
            adj[j].append(i)
        for v in adj:
            adj[v].sort()
        return adj

    def degree(self, v: int) -> int:
        return sum(1 for e in self.edges if v in e)

    def label(self, u: int, v: int) -> float:
        """Ratio m_uv implied by the edge, inverting the label against orientation."""
        if u < v:
            return self.edges[(u, v)]
        return 1.0 / self.edges[(v, u)]

    def to_generator_set(self) -> GeneratorSet:
        return GeneratorSet(self.n, tuple((i, j, v) for (i, j), v in self.edges.items()))


def build_graph(b: GeneratorSet) -> ComparisonGraph:
    return ComparisonGraph(b.n, {e.pair: e.value for e in b})


def _dfs_tree_edges(g: ComparisonGraph, root: int = 1) -> tuple[list[tuple[int, int]], set[int]]:
    """Iterative DFS from `root`, neighbours visited in ascending order.

    Returns the discovery (tree) edges in discovery order and the set of
    reached vertices.
    """
    adj = g.adjacency()
    seen = {root}
    tree: list[tuple[int, int]] = []
    stack = [(root, iter(adj[root]))]
    while stack:
        v, it = stack[-1]
        for w in it:
            if w not in seen:
                seen.add(w)
                tree.append((min(v, w), max(v, w)))
                stack.append((w, iter(adj[w])))
                break
        else:
            stack.pop()
    return tree, seen


def unreached_vertices(g: ComparisonGraph) -> list[int]:
    """Vertices not reachable from vertex 1."""
    _, seen = _dfs_tree_edges(g)
    return [v for v in g.vertices if v not in seen]


def spanning_tree(g: ComparisonGraph) -> ComparisonGraph:
    """Depth-first spanning tree of the component containing vertex 1.

    Fewer than n - 1 edges in the result means G is disconnected.
    """
    tree, _ = _dfs_tree_edges(g)
    return ComparisonGraph(g.n, {e: g.edges[e] for e in tree})


def is_tree(g: ComparisonGraph) -> bool:
    if len(g.edges) != g.n - 1:
        return False
    _, seen = _dfs_tree_edges(g)
    return len(seen) == g.n


def has_cycle(g: ComparisonGraph) -> bool:
    # a forest has exactly n - (number of components) edges
    return len(g.edges) > g.n - len(connected_components(g))


def generates(b: GeneratorSet) -> bool:
    """True iff G_B connects all n vertices."""
    return not unreached_vertices(build_graph(b))


def connected_components(g: ComparisonGraph) -> list[list[int]]:
    adj = g.adjacency()
    comp_of: dict[int, int] = {}
    comps: list[list[int]] = []
    for s in g.vertices:
        if s in comp_of:
            continue
        comp_of[s] = len(comps)
        members = [s]
        stack = [s]
        while stack:
            v = stack.pop()
            for w in adj[v]:
                if w not in comp_of:
                    comp_of[w] = len(comps)
                    members.append(w)
                    stack.append(w)
        comps.append(sorted(members))
    return comps


def derivable_pairs(b: GeneratorSet) -> set[tuple[int, int]]:
    """All pairs (i, j), i < j, whose ratio follows from B by path products."""
    out = set()
    for comp in connected_components(build_graph(b)):
        for x, i in enumerate(comp):
            for j in comp[x + 1:]:
                out.add((i, j))
    return out


def frequency(i: int, b: GeneratorSet) -> int:
    """Number of entries of B that mention entity i (its degree in G_B)."""
    if not 1 <= i <= b.n:
        raise DomainError(f"entity {i} out of range 1..{b.n}")
    return sum(1 for e in b if i in (e.i, e.j))


@dataclass(frozen=True)
class HandicapReport:
    frequencies: dict[int, int]
    active: frozenset[int]
    max_frequency: int
    total: int


def total_handicap(b: GeneratorSet) -> HandicapReport:
    """h(B): sum over active entities of (max frequency - own frequency)."""
    if len(b) == 0:
        raise DomainError("total handicap is undefined for an empty generator set")
    freq = {v: 0 for v in range(1, b.n + 1)}
    for e in b:
        freq[e.i] += 1
        freq[e.j] += 1
    active = frozenset(v for v, f in freq.items() if f > 0)
    top = max(freq[v] for v in active)
    return HandicapReport(freq, active, top, sum(top - freq[v] for v in active))


def parse_generator_lines(text: str) -> list[tuple[int, int, int, float]]:
    """Parse "i j value" lines into (lineno, i, j, value) tuples.

    Blank lines and '#' comments are skipped. Only syntax is checked here.
    """
    out = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        fields = line.split()
        if len(fields) != 3:
            raise GeneratorFileError(f"expected 3 fields 'i j value', got {len(fields)}", lineno)
        try:
            i, j = int(fields[0]), int(fields[1])
        except ValueError:
            raise GeneratorFileError(f"indices must be integers: {line!r}", lineno) from None
        try:
            v = float(fields[2])
        except ValueError:
            raise GeneratorFileError(f"value is not a number: {fields[2]!r}", lineno) from None
        out.append((lineno, i, j, v))
    return out


def parse_generator_set(text: str, n: int, rel_tol: float = DEFAULT_TOL) -> GeneratorSet:
    if n < 1:
        raise DomainError(f"matrix order must be >= 1, got {n}")
    store: dict = {}
    for lineno, i, j, v in parse_generator_lines(text):
        try:
            _merge(store, normalize_entry(n, i, j, v), rel_tol)
        except DomainError as exc:
            raise GeneratorFileError(str(exc), lineno) from None
    return GeneratorSet(n, tuple(store.values()))


def read_generator_file(path: str | Path, n: int, rel_tol: float = DEFAULT_TOL) -> GeneratorSet:
    return parse_generator_set(Path(path).read_text(), n, rel_tol)


def format_generator_set(b: GeneratorSet) -> str:
    return "".join(f"{e.i} {e.j} {e.value!r}\n" for e in b)
