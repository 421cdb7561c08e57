"""Undirected graphs stored as packed 64-bit adjacency bitsets.

A graph on n vertices keeps one row of ``ceil(n / 64)`` uint64 words per
vertex; bit v of row u is set iff {u, v} is an edge.  Word-parallel
popcounts over these rows are what make the solver's incremental fitness
updates cheap, and the same rows can be viewed as arbitrary-precision
Python ints for the pure-Python code paths.
"""

from __future__ import annotations

from typing import Iterable, Sequence

import numpy as np


def words_for(n: int) -> int:
    """Number of uint64 words needed for an n-bit row."""
    return (n + 63) // 64


def pack_bool(bits: np.ndarray) -> np.ndarray:
    """Pack a boolean vector into little-endian uint64 words."""
    b = np.asarray(bits, dtype=bool)
    w = words_for(b.shape[0])
    raw = np.packbits(b, bitorder="little")
    out = np.zeros(w * 8, dtype=np.uint8)
    out[: raw.shape[0]] = raw
    return out.view(np.uint64)


def unpack_words(words: np.ndarray, n: int) -> np.ndarray:
    """Inverse of pack_bool: first n bits of a word row as booleans."""
    raw = np.asarray(words, dtype=np.uint64).view(np.uint8)
    return np.unpackbits(raw, bitorder="little")[:n].astype(bool)


def popcount_words(words: np.ndarray) -> int:
    return int(np.bitwise_count(words).sum())


def words_to_int(words: np.ndarray) -> int:
    """Word row as one arbitrary-precision bitset integer."""
    return int.from_bytes(np.ascontiguousarray(words).tobytes(), "little")


class Graph:
    """Immutable simple undirected graph with packed adjacency rows."""

    __slots__ = ("n", "m", "adj", "_adj_ints")

    def __init__(self, n: int, adj: np.ndarray, m: int) -> None:
        # internal: use build_graph / parse_edge_list to construct
        self.n = n
        self.m = m
        adj.setflags(write=False)
        self.adj = adj
        self._adj_ints: list[int] | None = None

    @property
    def words(self) -> int:
        return self.adj.shape[1]

    @property
    def adj_ints(self) -> list[int]:
        """Adjacency rows as Python ints, built lazily and cached."""
        if self._adj_ints is None:
            self._adj_ints = [words_to_int(self.adj[v]) for v in range(self.n)]
        return self._adj_ints

    def degree(self, v: int) -> int:
        self._check_vertex(v)
        return int(np.bitwise_count(self.adj[v]).sum())

    def degrees(self) -> np.ndarray:
        return np.bitwise_count(self.adj).sum(axis=1).astype(np.int64)

    def has_edge(self, u: int, v: int) -> bool:
        self._check_vertex(u)
        self._check_vertex(v)
        return bool((int(self.adj[u, v >> 6]) >> (v & 63)) & 1)

    def neighbors(self, v: int) -> np.ndarray:
        self._check_vertex(v)
        return np.flatnonzero(unpack_words(self.adj[v], self.n))

    def edge_arrays(self) -> tuple[np.ndarray, np.ndarray]:
        """All edges as (u, v) arrays with u < v, lexicographically sorted."""
        dense = self.dense()
        us, vs = np.nonzero(np.triu(dense, 1))
        return us, vs

    def dense(self) -> np.ndarray:
        """Adjacency as an (n, n) boolean matrix."""
        raw = self.adj.view(np.uint8)
        return np.unpackbits(raw, axis=1, bitorder="little")[:, : self.n].astype(bool)

    def _check_vertex(self, v: int) -> None:
        if not 0 <= v < self.n:
            raise ValueError(f"vertex {v} out of range for n={self.n}")

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self.m == other.m and np.array_equal(self.adj, other.adj)

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


def _graph_from_edge_arrays(n: int, us: np.ndarray, vs: np.ndarray) -> Graph:
    """Build a Graph from parallel endpoint arrays; dedupes, no validation."""
    w = words_for(n)
    adj = np.zeros((n, w), dtype=np.uint64)
    if us.shape[0]:
        lo = np.minimum(us, vs).astype(np.int64)
        hi = np.maximum(us, vs).astype(np.int64)
        code = np.unique(lo * np.int64(n) + hi)
        lo, hi = code // n, code % n
        src = np.concatenate([lo, hi])
        dst = np.concatenate([hi, lo])
        bit = np.uint64(1) << (dst & 63).astype(np.uint64)
        np.bitwise_or.at(adj, (src, dst >> 6), bit)
        m = int(code.shape[0])
    else:
        m = 0
    return Graph(n, adj, m)


def build_graph(n: int, edges: Iterable[Sequence[int]]) -> Graph:
    """Construct a graph from an edge list.

    Vertices are 0-indexed.  Out-of-range endpoints and self-loops are
    rejected with the offending pair named; duplicate edges (in either
    orientation) collapse to one.
    """
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    us: list[int] = []
    vs: list[int] = []
    for pair in edges:
        u, v = pair
        if not (0 <= u < n and 0 <= v < n):
            raise ValueError(f"edge ({u}, {v}) out of range for n={n}")
        if u == v:
            raise ValueError(f"self-loop ({u}, {v}) is not allowed")
        us.append(u)
        vs.append(v)
    return _graph_from_edge_arrays(
        n, np.asarray(us, dtype=np.int64), np.asarray(vs, dtype=np.int64)
    )


def _candidate_bits(g: Graph, x) -> np.ndarray:
    from .ea import CoverCandidate  # late import; ea depends on graph

    if isinstance(x, CoverCandidate):
        b = x.bits
    else:
        b = np.asarray(x)
        if b.shape != (g.n,):
            raise ValueError(f"candidate has shape {b.shape}, expected ({g.n},)")
    return b.astype(bool, copy=False)


def count_uncovered_edges(g: Graph, x) -> int:
    """Number of edges with both endpoints outside the candidate cover."""
    b = _candidate_bits(g, x)
    outside = ~b
    ow = pack_bool(outside)
    rows = g.adj[outside]
    # each uncovered edge is counted from both endpoints
    return int(np.bitwise_count(rows & ow).sum()) // 2


def fringe_degree(g: Graph, v: int, fringe: np.ndarray) -> int:
    """Number of neighbors of v inside the given vertex subset."""
    g._check_vertex(v)
    f = np.asarray(fringe)
    if f.shape != (g.n,):
        raise ValueError(f"subset mask has shape {f.shape}, expected ({g.n},)")
    fw = pack_bool(f.astype(bool, copy=False))
    return int(np.bitwise_count(g.adj[v] & fw).sum())


def to_edge_list(g: Graph) -> str:
    """Serialize as text: 'n m' header then one 'u v' line per edge.

    Edges appear with u < v in lexicographic order, so equal graphs
    serialize to identical bytes.
    """
    us, vs = g.edge_arrays()
    lines = [f"{g.n} {g.m}"]
    lines.extend(f"{u} {v}" for u, v in zip(us.tolist(), vs.tolist()))
    return "\n".join(lines) + "\n"


def parse_edge_list(text: str) -> Graph:
    """Parse the to_edge_list format; validates counts and endpoints."""
    lines = [ln for ln in (raw.strip() for raw in text.splitlines()) if ln]
    if not lines:
        raise ValueError("empty edge list document")
    head = lines[0].split()
    if len(head) != 2:
        raise ValueError(f"header must be 'n m', got {lines[0]!r}")
    n, m = int(head[0]), int(head[1])
    body = lines[1:]
    if len(body) != m:
        raise ValueError(f"header declares {m} edges but {len(body)} lines follow")
    edges = []
    for ln in body:
        parts = ln.split()
        if len(parts) != 2:
            raise ValueError(f"malformed edge line {ln!r}")
        edges.append((int(parts[0]), int(parts[1])))
    g = build_graph(n, edges)
    if g.m != m:
        raise ValueError(f"edge list contains duplicates: {m} declared, {g.m} distinct")
    return g


def write_edge_list(g: Graph, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(to_edge_list(g))


def read_edge_list(path) -> Graph:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_edge_list(fh.read())
