"""Planted vertex cover random graphs.

An instance on n vertices plants a core C of k vertices: every pair
with at least one endpoint in C is an edge independently with
probability p, and pairs with both endpoints outside C (the fringe)
are never edges.  C is therefore always a vertex cover, and for a wide
parameter range it is the unique minimum one.

Two structural probes matter for when simple search heuristics recover
C.  Heaviness: an instance is delta-heavy when every core vertex keeps
at least ln(n) fringe neighbors inside every fringe subset of size
floor(delta * (n - k)).  Core independence: the largest independent
set inside C stays below (1 + 2/p) ln(k) + 1 with probability tending
to one, which bounds how many core vertices a cover can drop.
"""

from __future__ import annotations

import json
import math
import os
from dataclasses import dataclass

import numpy as np

from .graph import (
    Graph,
    _graph_from_edge_arrays,
    fringe_degree,
    pack_bool,
    parse_edge_list,
    to_edge_list,
)
from .rng import SplitMix64, derive_seed, stream_random


@dataclass(frozen=True)
class ModelParams:
    """Parameters (n, k, p, seed) of the planted model."""

    n: int
    k: int
    p: float
    seed: int

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError(f"n must be >= 1, got {self.n}")
        if not 0 <= self.k <= self.n:
            raise ValueError(f"k must be in [0, n], got k={self.k}, n={self.n}")
        if not 0.0 < self.p <= 1.0:
            raise ValueError(f"p must be in (0, 1], got {self.p}")


@dataclass(frozen=True)
class PlantedInstance:
    """A sampled graph together with its planted core."""

    graph: Graph
    core: np.ndarray
    params: ModelParams

    @property
    def n(self) -> int:
        return self.graph.n

    @property
    def k(self) -> int:
        return self.params.k

    def core_vertices(self) -> np.ndarray:
        return np.flatnonzero(self.core)

    def fringe_mask(self) -> np.ndarray:
        return ~self.core


def sample_instance(params: ModelParams) -> PlantedInstance:
    """Draw one instance; fully determined by params including seed.

    The core is a uniform k-subset from one child stream; the edge
    coins come from a second, consumed in a fixed pair order (core-core
    pairs in lexicographic order over the sorted core, then each core
    vertex in ascending order against the ascending fringe).
    """
    n, k, p = params.n, params.k, params.p
    core_rng = SplitMix64(derive_seed(params.seed, 0))
    perm = list(range(n))
    for i in range(k):
        j = i + core_rng.below(n - i)
        perm[i], perm[j] = perm[j], perm[i]
    core_sorted = np.sort(np.asarray(perm[:k], dtype=np.int64))
    fringe_sorted = np.setdiff1d(np.arange(n, dtype=np.int64), core_sorted)

    npairs = k * n - k * (k + 1) // 2
    coins = stream_random(derive_seed(params.seed, 1), npairs) < p

    if k > 1:
        cc_i, cc_j = np.triu_indices(k, 1)
        cc_u = core_sorted[cc_i]
        cc_v = core_sorted[cc_j]
    else:
        cc_u = cc_v = np.empty(0, dtype=np.int64)
    cf_u = np.repeat(core_sorted, n - k)
    cf_v = np.tile(fringe_sorted, k)
    us = np.concatenate([cc_u, cf_u])[coins]
    vs = np.concatenate([cc_v, cf_v])[coins]

    graph = _graph_from_edge_arrays(n, us, vs)
    core_mask = np.zeros(n, dtype=bool)
    core_mask[core_sorted] = True
    core_mask.setflags(write=False)
    return PlantedInstance(graph, core_mask, params)


def _heaviness_floor(inst: PlantedInstance, delta: float) -> int:
    """Minimum over core vertices of the guaranteed number of neighbors
    inside any fringe subset of size floor(delta * fringe)."""
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
    fw = pack_bool(inst.fringe_mask())
    deg = np.bitwise_count(inst.graph.adj[inst.core] & fw).sum(axis=1).astype(np.int64)
    # an adversarial subset removes the (fringe - s) highest-overlap
    # vertices, so d - (fringe - s) neighbors always survive
    return int((deg - (fringe - s)).min())


def is_delta_heavy(inst: PlantedInstance, delta: float) -> bool:
    """Whether every core vertex sees >= ln(n) neighbors in every
    fringe subset of size floor(delta * (n - k))."""
    return _heaviness_floor(inst, delta) >= math.log(inst.n)


def core_independence_bound(k: int, p: float) -> float:
    """High-probability upper bound (1 + 2/p) ln(k) + 1 on the largest
    independent set inside the core."""
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    if not 0.0 < p <= 1.0:
        raise ValueError(f"p must be in (0, 1], got {p}")
    return (1.0 + 2.0 / p) * math.log(k) + 1.0


def _mis_exact_small(masks: list[int], full: int) -> int:
    """Maximum independent set by branch on a highest-degree vertex."""

    def rec(avail: int) -> int:
        if avail == 0:
            return 0
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
            return avail.bit_count()
        with_v = 1 + rec(avail & ~masks[best_v] & ~(1 << best_v))
        without_v = rec(avail & ~(1 << best_v))
        return max(with_v, without_v)

    return rec(full)


def max_core_independent_set(
    inst: PlantedInstance, *, exact_limit: int = 32, fallback: bool = True
) -> int:
    """Size of the largest independent set within the planted core.

    Exhaustive branching is used up to ``exact_limit`` core vertices;
    beyond that a branch-and-bound search takes over when ``fallback``
    is true, otherwise the call is rejected.
    """
    core = inst.core_vertices()
    k = core.shape[0]
    if k == 0:
        return 0
    if k <= exact_limit:
        pos = {int(v): i for i, v in enumerate(core)}
        masks = [0] * k
        for i, v in enumerate(core):
            for u in inst.graph.neighbors(int(v)):
                if int(u) in pos:
                    masks[i] |= 1 << pos[int(u)]
        return _mis_exact_small(masks, (1 << k) - 1)
    if not fallback:
        raise ValueError(f"core size {k} exceeds exact_limit={exact_limit}")
    from .oracle import max_independent_set_bb

    return max_independent_set_bb(inst.graph, restrict=core)


def small_k_density_threshold(delta: float) -> float:
    """Edge probability above which delta-heaviness holds with high
    probability when the core is small: sqrt((1 - ln(delta)) / 2).

    Defined for delta strictly between 1/e and 1, where the value lies
    in (0, 1)."""
    lo = 1.0 / math.e
    if not lo < delta < 1.0:
        raise ValueError(f"delta must be in (1/e, 1) exclusive, got {delta}")
    return math.sqrt((1.0 - math.log(delta)) / 2.0)


_SIDECAR_KIND = "planted-cover-instance"


def write_instance(inst: PlantedInstance, path) -> None:
    """Write edge list + core line, and a JSON parameter sidecar at
    path + '.json'."""
    core = " ".join(str(v) for v in inst.core_vertices().tolist())
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(to_edge_list(inst.graph))
        fh.write(f"core: {core}\n")
    meta = {
        "kind": _SIDECAR_KIND,
        "n": inst.params.n,
        "k": inst.params.k,
        "p": inst.params.p,
        "seed": inst.params.seed,
        "m": inst.graph.m,
    }
    with open(f"{path}.json", "w", encoding="utf-8") as fh:
        json.dump(meta, fh, sort_keys=True, indent=2)
        fh.write("\n")


def read_instance(path) -> PlantedInstance:
    """Read an instance written by write_instance; validates that every
    edge touches the core."""
    with open(path, "r", encoding="utf-8") as fh:
        text = fh.read()
    lines = text.splitlines()
    core_line = None
    body = []
    for ln in lines:
        if ln.startswith("core:"):
            core_line = ln
        else:
            body.append(ln)
    if core_line is None:
        raise ValueError(f"{path}: missing 'core:' line")
    graph = parse_edge_list("\n".join(body))
    core_ids = [int(tok) for tok in core_line[len("core:"):].split()]
    core_mask = np.zeros(graph.n, dtype=bool)
    for v in core_ids:
        if not 0 <= v < graph.n:
            raise ValueError(f"{path}: core vertex {v} out of range")
        core_mask[v] = True

    sidecar = f"{path}.json"
    if not os.path.exists(sidecar):
        raise ValueError(f"{path}: parameter sidecar {sidecar} is missing")
    with open(sidecar, "r", encoding="utf-8") as fh:
        meta = json.load(fh)
    params = ModelParams(n=meta["n"], k=meta["k"], p=meta["p"], seed=meta["seed"])
    if params.n != graph.n or params.k != len(core_ids):
        raise ValueError(f"{path}: sidecar disagrees with instance body")

    fw = pack_bool(~core_mask)
    fringe_rows = graph.adj[~core_mask]
    if int(np.bitwise_count(fringe_rows & fw).sum()) != 0:
        raise ValueError(f"{path}: edge between two non-core vertices")
    core_mask.setflags(write=False)
    return PlantedInstance(graph, core_mask, params)


__all__ = [
    "ModelParams",
    "PlantedInstance",
    "sample_instance",
    "is_delta_heavy",
    "core_independence_bound",
    "max_core_independent_set",
    "small_k_density_threshold",
    "write_instance",
    "read_instance",
    "fringe_degree",
]
