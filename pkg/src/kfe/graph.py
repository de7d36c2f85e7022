"""Simple undirected graphs: construction, parsing, and deterministic generators.

Vertices are integers 0..n-1 and keep those labels everywhere downstream:
induced subgraphs, matrix rows, orderings, and emitted solutions all speak in
original labels.
"""

from __future__ import annotations

import warnings
from typing import Iterable, Iterator

import numpy as np

from .errors import GraphParseError

__all__ = [
    "Graph",
    "parse_edge_list",
    "parse_dimacs",
    "generate",
    "GENERATOR_FAMILIES",
]


class Graph:
    """Immutable simple undirected graph.

    No self-loops, no parallel edges. Isolated vertices are allowed: they count
    toward ``n`` but appear in no edge. Safe for concurrent reads once built.
    """

    __slots__ = ("n", "_adj", "m")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = ()):
        if n < 0:
            raise ValueError(f"vertex count must be non-negative, got {n}")
        adj: list[set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            adj[u].add(v)
            adj[v].add(u)
        self.n = n
        self._adj: tuple[tuple[int, ...], ...] = tuple(tuple(sorted(s)) for s in adj)
        self.m = sum(len(a) for a in self._adj) // 2

    @property
    def adj(self) -> tuple[tuple[int, ...], ...]:
        """Per-vertex sorted neighbor tuples."""
        return self._adj

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self._adj[v]

    def degree(self, v: int) -> int:
        return len(self._adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        return v in self._adj[u]

    def edges(self) -> Iterator[tuple[int, int]]:
        """Yield each edge once as (u, v) with u < v, in sorted order."""
        for u in range(self.n):
            for v in self._adj[u]:
                if u < v:
                    yield (u, v)

    def edge_set(self) -> set[tuple[int, int]]:
        return set(self.edges())

    def __eq__(self, other) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self._adj == other._adj

    def __hash__(self) -> int:
        return hash((self.n, self._adj))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


def parse_edge_list(text: str) -> Graph:
    """Parse whitespace-separated edge-list text.

    Format: one ``u v`` pair per line, labels >= 0. ``#`` starts a comment.
    An optional first data line ``n <count>`` fixes the vertex count; otherwise
    n is the largest label + 1. Duplicate edges collapse silently; self-loops
    are rejected.
    """
    n_declared: int | None = None
    edges: list[tuple[int, int]] = []
    max_label = -1
    seen_data = False
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if not seen_data and len(parts) == 2 and parts[0] == "n":
            try:
                n_declared = int(parts[1])
            except ValueError:
                raise GraphParseError(f"bad vertex count {parts[1]!r}", lineno) from None
            if n_declared < 0:
                raise GraphParseError("vertex count must be non-negative", lineno)
            seen_data = True
            continue
        seen_data = True
        if len(parts) != 2:
            raise GraphParseError(f"expected 'u v', got {line!r}", lineno)
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise GraphParseError(f"non-integer vertex in {line!r}", lineno) from None
        if u < 0 or v < 0:
            raise GraphParseError("vertex labels must be non-negative", lineno)
        if u == v:
            raise GraphParseError(f"self-loop at vertex {u}", lineno)
        edges.append((u, v))
        if u > max_label:
            max_label = u
        if v > max_label:
            max_label = v
    n = n_declared if n_declared is not None else max_label + 1
    if max_label >= n:
        raise GraphParseError(f"vertex {max_label} out of range for declared n={n}")
    return Graph(n, edges)


def parse_dimacs(text: str) -> Graph:
    """Parse DIMACS ``p edge`` format (1-indexed vertices, relabeled to 0-indexed).

    Lines: ``c ...`` comment, ``p edge <n> <m>`` header (required, once),
    ``e <u> <v>`` edge. A mismatch between the declared and actual edge count
    is reported as a warning, not an error.
    """
    n: int | None = None
    m_declared = 0
    edges: list[tuple[int, int]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        parts = line.split()
        if parts[0] == "p":
            if n is not None:
                raise GraphParseError("duplicate problem line", lineno)
            if len(parts) != 4 or parts[1] != "edge":
                raise GraphParseError(f"expected 'p edge <n> <m>', got {line!r}", lineno)
            try:
                n, m_declared = int(parts[2]), int(parts[3])
            except ValueError:
                raise GraphParseError(f"bad problem line {line!r}", lineno) from None
            if n < 0 or m_declared < 0:
                raise GraphParseError("counts must be non-negative", lineno)
        elif parts[0] == "e":
            if n is None:
                raise GraphParseError("edge before 'p edge' header", lineno)
            if len(parts) != 3:
                raise GraphParseError(f"expected 'e <u> <v>', got {line!r}", lineno)
            try:
                u, v = int(parts[1]), int(parts[2])
            except ValueError:
                raise GraphParseError(f"non-integer vertex in {line!r}", lineno) from None
            if not (1 <= u <= n and 1 <= v <= n):
                raise GraphParseError(f"vertex out of range 1..{n} in {line!r}", lineno)
            if u == v:
                raise GraphParseError(f"self-loop at vertex {u}", lineno)
            edges.append((u - 1, v - 1))
        else:
            raise GraphParseError(f"unrecognized line {line!r}", lineno)
    if n is None:
        raise GraphParseError("missing 'p edge' header")
    g = Graph(n, edges)
    if g.m != m_declared:
        warnings.warn(
            f"DIMACS header declares {m_declared} edges, input has {g.m} distinct edges",
            stacklevel=2,
        )
    return g


def _gen_empty(n: int) -> Graph:
    return Graph(n)


def _gen_complete(n: int) -> Graph:
    return Graph(n, ((u, v) for u in range(n) for v in range(u + 1, n)))


def _gen_path(n: int) -> Graph:
    return Graph(n, ((i, i + 1) for i in range(n - 1)))


def _gen_star(n: int) -> Graph:
    # center is vertex 0; n counts all vertices, so there are n-1 leaves
    return Graph(n, ((0, i) for i in range(1, n)))


def _gen_grid(rows: int, cols: int) -> Graph:
    if rows < 0 or cols < 0:
        raise ValueError("grid dimensions must be non-negative")
    edges = []
    for r in range(rows):
        for c in range(cols):
            v = r * cols + c
            if c + 1 < cols:
                edges.append((v, v + 1))
            if r + 1 < rows:
                edges.append((v, v + cols))
    return Graph(rows * cols, edges)


def _rng(seed: int) -> np.random.Generator:
    # Philox: counter-based and splittable, with a published algorithm, so a
    # port to another language can reproduce the exact same graphs.
    return np.random.Generator(np.random.Philox(key=seed))


def _gen_random_gnp(n: int, p: float, seed: int = 0) -> Graph:
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"edge probability must be in [0, 1], got {p}")
    rng = _rng(seed)
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    if not pairs:
        return Graph(n)
    keep = rng.random(len(pairs)) < p
    return Graph(n, (uv for uv, k in zip(pairs, keep) if k))


def _gen_random_bipartite(n1: int, n2: int, p: float, seed: int = 0) -> Graph:
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"edge probability must be in [0, 1], got {p}")
    rng = _rng(seed)
    # left part is 0..n1-1, right part is n1..n1+n2-1; pairs drawn left-major
    pairs = [(u, n1 + v) for u in range(n1) for v in range(n2)]
    if not pairs:
        return Graph(n1 + n2)
    keep = rng.random(len(pairs)) < p
    return Graph(n1 + n2, (uv for uv, k in zip(pairs, keep) if k))


GENERATOR_FAMILIES = {
    "empty": _gen_empty,
    "complete": _gen_complete,
    "path": _gen_path,
    "star": _gen_star,
    "grid": _gen_grid,
    "random_gnp": _gen_random_gnp,
    "random_bipartite": _gen_random_bipartite,
    # short aliases used by the CLI generator syntax
    "gnp": _gen_random_gnp,
    "bipartite": _gen_random_bipartite,
}


def generate(family: str, **params) -> Graph:
    """Build a test graph from a named family.

    Families: empty(n), complete(n), path(n), star(n), grid(rows, cols),
    random_gnp(n, p, seed), random_bipartite(n1, n2, p, seed). The result is a
    pure function of (family, params): identical arguments give bit-identical
    edge sets on every run and platform.
    """
    try:
        fn = GENERATOR_FAMILIES[family]
    except KeyError:
        raise ValueError(
            f"unknown family {family!r}; choose from {sorted(set(GENERATOR_FAMILIES))}"
        ) from None
    return fn(**params)
