"""Exhaustive reference implementations.

Everything here trades speed for obviousness: plain loops over subsets
or edges, no packed-word tricks, no incremental state.  The fast paths
elsewhere are tested against these.  Size caps keep accidental
combinatorial blowups from hanging a session; callers can raise them
explicitly.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .graph import Graph
from .model import PlantedInstance


@dataclass(frozen=True)
class OracleLimit:
    """Size caps for the exhaustive searches."""

    max_n_exhaustive: int = 20
    max_subsets: int = 10_000_000


_DEFAULT = OracleLimit()


def fitness_brute(g: Graph, bits) -> int:
    """Penalty fitness by looping over every edge individually."""
    b = np.asarray(bits)
    if b.shape != (g.n,):
        raise ValueError(f"candidate has shape {b.shape}, expected ({g.n},)")
    b = b.astype(bool, copy=False)
    ones = 0
    for v in range(g.n):
        if b[v]:
            ones += 1
    uncovered = 0
    us, vs = g.edge_arrays()
    for u, v in zip(us.tolist(), vs.tolist()):
        if not b[u] and not b[v]:
            uncovered += 1
    return ones + g.n * uncovered


def min_vertex_cover_exact(
    g: Graph, limit: OracleLimit | None = None
) -> tuple[int, np.ndarray]:
    """Minimum vertex cover size and one witness, by trying all vertex
    subsets in ascending size, lexicographic within a size."""
    limit = limit or _DEFAULT
    if g.n > limit.max_n_exhaustive:
        raise ValueError(f"n={g.n} exceeds exhaustive cap {limit.max_n_exhaustive}")
    rows = g.adj_ints
    full = (1 << g.n) - 1
    for size in range(g.n + 1):
        for comb in itertools.combinations(range(g.n), size):
            mask = 0
            for v in comb:
                mask |= 1 << v
            outside = full & ~mask
            ok = True
            rem = outside
            while rem:
                v = (rem & -rem).bit_length() - 1
                if rows[v] & outside:
                    ok = False
                    break
                rem &= rem - 1
            if ok:
                witness = np.zeros(g.n, dtype=bool)
                for v in comb:
                    witness[v] = True
                return size, witness
    raise AssertionError("unreachable: the full vertex set is always a cover")


def max_independent_set_exact(
    g: Graph, restrict=None, limit: OracleLimit | None = None
) -> int:
    """Maximum independent set size by enumerating all subsets of the
    restriction (default: all vertices)."""
    limit = limit or _DEFAULT
    verts = sorted(int(v) for v in restrict) if restrict is not None else list(range(g.n))
    r = len(verts)
    if r > limit.max_n_exhaustive:
        raise ValueError(f"{r} vertices exceeds exhaustive cap {limit.max_n_exhaustive}")
    local = [0] * r
    pos = {v: i for i, v in enumerate(verts)}
    for i, v in enumerate(verts):
        for u in g.neighbors(v):
            if int(u) in pos:
                local[i] |= 1 << pos[int(u)]
    best = 0
    for mask in range(1 << r):
        ok = True
        rem = mask
        while rem:
            i = (rem & -rem).bit_length() - 1
            if local[i] & mask:
                ok = False
                break
            rem &= rem - 1
        if ok:
            size = mask.bit_count()
            if size > best:
                best = size
    return best


def max_independent_set_bb(g: Graph, restrict=None) -> int:
    """Maximum independent set by branch and bound; no size cap, meant
    for moderately sized dense restrictions."""
    verts = sorted(int(v) for v in restrict) if restrict is not None else list(range(g.n))
    r = len(verts)
    if r == 0:
        return 0
    pos = {v: i for i, v in enumerate(verts)}
    masks = [0] * r
    for i, v in enumerate(verts):
        for u in g.neighbors(v):
            if int(u) in pos:
                masks[i] |= 1 << pos[int(u)]
    best = 0

    def rec(avail: int, size: int) -> None:
        nonlocal best
        if size + avail.bit_count() <= best:
            return
        if avail == 0:
            best = max(best, size)
            return
        best_v = -1
        best_d = -1
        rem = avail
        while rem:
            v = (rem & -rem).bit_length() - 1
            d = (masks[v] & avail).bit_count()
            if d > best_d:
                best_d, best_v = d, v
            rem &= rem - 1
        if best_d == 0:
            best = max(best, size + avail.bit_count())
            return
        rec(avail & ~masks[best_v] & ~(1 << best_v), size + 1)
        rec(avail & ~(1 << best_v), size)

    rec((1 << r) - 1, 0)
    return best


def is_delta_heavy_exhaustive(
    inst: PlantedInstance, delta: float, limit: OracleLimit | None = None
) -> bool:
    """Heaviness check by enumerating every fringe subset of the
    prescribed size and every core vertex against it."""
    limit = limit or _DEFAULT
    n, k = inst.n, inst.k
    fringe = n - k
    if k < 1:
        raise ValueError("heaviness needs a non-empty core")
    if fringe < 1:
        raise ValueError("heaviness needs a non-empty fringe")
    if not 0.0 < delta < 1.0:
        raise ValueError(f"delta must be in (0, 1), got {delta}")
    s = math.floor(delta * fringe)
    if s < 1:
        raise ValueError(f"floor(delta * (n - k)) = 0 for delta={delta}, n-k={fringe}")
    if math.comb(fringe, s) > limit.max_subsets:
        raise ValueError(
            f"C({fringe}, {s}) = {math.comb(fringe, s)} subsets exceeds cap {limit.max_subsets}"
        )
    rows = inst.graph.adj_ints
    core = [int(v) for v in inst.core_vertices()]
    fringe_verts = [int(v) for v in np.flatnonzero(inst.fringe_mask())]
    need = math.log(n)
    for subset in itertools.combinations(fringe_verts, s):
        smask = 0
        for v in subset:
            smask |= 1 << v
        for v in core:
            if (rows[v] & smask).bit_count() < need:
                return False
    return True
