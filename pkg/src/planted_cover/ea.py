"""(1+1) evolutionary algorithm for minimum vertex cover.

Candidates are bit strings over the vertex set; the penalty fitness

    f(x) = |x| + n * (number of edges with both endpoints outside x)

is minimized, ties accepted.  Mutation flips each bit independently
with a common rate (1/n by default).  A run draws the initial point
uniformly at random and repeats mutate-then-select until a stopping
policy fires; the restart variant additionally redraws the current
point every ``restart_length`` iterations.

The flip count per step is sampled from its exact binomial
distribution and that many distinct positions are drawn, which is
equivalent to independent per-bit coin flips but lets the kernels do
O(flips) work per iteration instead of O(n).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import kernels
from .graph import (
    Graph,
    count_uncovered_edges,
    pack_bool,
    unpack_words,
    words_to_int,
)
from .rng import SplitMix64

# Budget stand-in when only target/feasibility policies are active.
_NO_BUDGET = 1 << 62
# Hard ceiling on in-memory trace rows.
TRACE_CAP = 2_000_000
_RESTART_POS_CAP = 1 << 20


def default_restart_length(n: int) -> int:
    """Restart period 3*e*n*ln(n), floored; the tuned schedule for
    dense planted instances."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    return max(1, math.floor(3.0 * math.e * n * math.log(n)))


@lru_cache(maxsize=64)
def _flip_cdf(n: int, rate: float) -> np.ndarray:
    """CDF of Binomial(n, rate), length n + 1, last entry forced to 1.

    Computed through log-space cumulation so extreme rates do not
    underflow.  Both kernel backends scan this same array, which keeps
    their draw sequences aligned.
    """
    lp = np.empty(n + 1, dtype=np.float64)
    lp[0] = n * math.log1p(-rate)
    if n > 0:
        c = np.arange(n, dtype=np.float64)
        step = (math.log(rate) - math.log1p(-rate)) + np.log((n - c) / (c + 1.0))
        lp[1:] = lp[0] + np.cumsum(step)
    pmf = np.exp(lp - lp.max())
    pmf /= pmf.sum()
    cdf = np.cumsum(pmf)
    cdf[-1] = 1.0
    cdf.setflags(write=False)
    return cdf


class CoverCandidate:
    """Bit-string candidate with cached size and uncovered-edge count."""

    __slots__ = ("bits", "ones", "uncovered", "_xbar")

    def __init__(self, bits: np.ndarray, ones: int, uncovered: int, xbar: int) -> None:
        self.bits = bits
        self.ones = ones
        self.uncovered = uncovered
        self._xbar = xbar

    @classmethod
    def from_bits(cls, g: Graph, bits) -> "CoverCandidate":
        b = np.asarray(bits)
        if b.shape != (g.n,):
            raise ValueError(f"candidate has shape {b.shape}, expected ({g.n},)")
        b = b.astype(bool).copy()
        ones = int(np.count_nonzero(b))
        unc = count_uncovered_edges(g, b)
        xbar = words_to_int(pack_bool(~b))
        return cls(b, ones, unc, xbar)

    def copy(self) -> "CoverCandidate":
        return CoverCandidate(self.bits.copy(), self.ones, self.uncovered, self._xbar)

    def flip(self, g: Graph, v: int) -> None:
        """Flip one bit in place, updating the cached counts in O(deg/64)."""
        g._check_vertex(v)
        row = g.adj_ints[v]
        if (self._xbar >> v) & 1:
            self.uncovered -= (row & self._xbar).bit_count()
            self._xbar ^= 1 << v
            self.ones += 1
            self.bits[v] = True
        else:
            self._xbar ^= 1 << v
            self.uncovered += (row & self._xbar).bit_count()
            self.ones -= 1
            self.bits[v] = False

    def __repr__(self) -> str:
        return f"CoverCandidate(ones={self.ones}, uncovered={self.uncovered})"


def fitness(g: Graph, x) -> int:
    """Penalty fitness |x| + n * uncovered(x)."""
    if isinstance(x, CoverCandidate):
        return x.ones + g.n * x.uncovered
    b = np.asarray(x)
    if b.shape != (g.n,):
        raise ValueError(f"candidate has shape {b.shape}, expected ({g.n},)")
    b = b.astype(bool, copy=False)
    return int(np.count_nonzero(b)) + g.n * count_uncovered_edges(g, b)


def potential(g: Graph, x, k: int) -> int:
    """Distance of the fitness above k, clamped at zero."""
    return max(0, fitness(g, x) - k)


def mutate(g: Graph, x: CoverCandidate, rate: float, rng: SplitMix64) -> CoverCandidate:
    """Standard-bit-mutation offspring; the parent is left untouched."""
    if not 0.0 < rate < 1.0:
        raise ValueError(f"mutation rate must be in (0, 1), got {rate}")
    cdf = _flip_cdf(g.n, rate)
    c = int(np.searchsorted(cdf, rng.random(), side="right"))
    perm = list(range(g.n))
    y = x.copy()
    for i in range(c):
        j = i + rng.below(g.n - i)
        perm[i], perm[j] = perm[j], perm[i]
        y.flip(g, perm[i])
    return y


@dataclass(frozen=True)
class EAConfig:
    """Run configuration.

    At least one stopping policy must be set: ``target`` (stop once
    f(x) <= target), ``budget`` (maximum number of fitness
    evaluations, the initial point included), or ``stop_at_feasible``
    (stop at the first candidate covering every edge).
    """

    seed: int
    mutation_rate: float | None = None
    target: int | None = None
    budget: int | None = None
    stop_at_feasible: bool = False
    restart_length: int | None = None
    trace: bool = False
    check: bool = False

    def __post_init__(self) -> None:
        if self.mutation_rate is not None and not 0.0 < self.mutation_rate < 1.0:
            raise ValueError(f"mutation_rate must be in (0, 1), got {self.mutation_rate}")
        if self.target is not None and self.target < 0:
            raise ValueError(f"target must be >= 0, got {self.target}")
        if self.budget is not None and self.budget < 1:
            raise ValueError(f"budget must be >= 1, got {self.budget}")
        if self.restart_length is not None and self.restart_length < 1:
            raise ValueError(f"restart_length must be >= 1, got {self.restart_length}")
        if self.target is None and self.budget is None and not self.stop_at_feasible:
            raise ValueError("no stopping policy: set target, budget, or stop_at_feasible")


@dataclass
class Trace:
    """Per-evaluation history of a run."""

    f: np.ndarray
    phi: np.ndarray
    uncovered: np.ndarray
    z: np.ndarray

    def __len__(self) -> int:
        return int(self.f.shape[0])

    def to_csv(self, path) -> None:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write("iter,f,phi,uncovered,z\n")
            for i in range(len(self)):
                fh.write(f"{i},{self.f[i]},{self.phi[i]},{self.uncovered[i]},{self.z[i]}\n")


@dataclass
class RunResult:
    """Outcome of one run.

    ``iterations`` counts fitness evaluations (initial point included).
    ``core_recovered`` is True when the final cover equals the tracked
    vertex subset exactly; ``overshoot`` is max(0, target - f(final)).
    """

    iterations: int
    first_feasible_at: int | None
    final: CoverCandidate
    success: bool
    core_recovered: bool
    overshoot: int
    restarts_used: int
    restart_iterations: np.ndarray
    trace: Trace | None
    backend: str


def _normalize_core(g: Graph, core) -> np.ndarray | None:
    if core is None:
        return None
    c = np.asarray(core)
    if c.dtype == bool:
        if c.shape != (g.n,):
            raise ValueError(f"core mask has shape {c.shape}, expected ({g.n},)")
        return c
    mask = np.zeros(g.n, dtype=bool)
    idx = c.astype(np.int64, copy=False)
    if idx.size and (idx.min() < 0 or idx.max() >= g.n):
        raise ValueError("core vertex index out of range")
    mask[idx] = True
    return mask


def _run(g: Graph, cfg: EAConfig, core, restart_len: int) -> RunResult:
    n = g.n
    if cfg.mutation_rate is not None:
        rate = cfg.mutation_rate
    else:
        rate = 1.0 / n if n > 1 else 0.5  # 1/n leaves (0, 1) at n = 1
    if not 0.0 < rate < 1.0:
        raise ValueError(f"mutation rate must be in (0, 1), got {rate} (n={n})")
    target = cfg.target if cfg.target is not None else -1
    budget = cfg.budget if cfg.budget is not None else _NO_BUDGET
    core_mask = _normalize_core(g, core)
    has_core = core_mask is not None
    core_words = pack_bool(core_mask) if has_core else np.zeros(g.words, dtype=np.uint64)

    if cfg.trace:
        cap = min(budget, TRACE_CAP)
    else:
        cap = 1
    trace_f = np.zeros(cap, dtype=np.int64)
    trace_phi = np.zeros(cap, dtype=np.int64)
    trace_unc = np.zeros(cap, dtype=np.int64)
    trace_z = np.zeros(cap, dtype=np.int64)
    if restart_len > 0:
        rcap = min(min(budget, _NO_BUDGET) // restart_len + 2, _RESTART_POS_CAP)
    else:
        rcap = 1
    restart_pos = np.zeros(rcap, dtype=np.int64)
    xbar_out = np.zeros(g.words, dtype=np.uint64)

    status, evals, first, restarts, ones, unc = kernels.run_chain(
        g.adj, n, np.uint64(cfg.seed & ((1 << 64) - 1)), _flip_cdf(n, rate),
        target, budget, cfg.stop_at_feasible, restart_len,
        core_words, has_core, xbar_out,
        trace_f, trace_phi, trace_unc, trace_z, cfg.trace,
        restart_pos, cfg.check,
    )
    status, evals, first, restarts = int(status), int(evals), int(first), int(restarts)
    ones, unc = int(ones), int(unc)

    if status == 3:
        raise RuntimeError(f"trace exceeded {cap} rows; lower the budget or disable trace")
    if status == 4:
        raise RuntimeError("incremental fitness diverged from full recount (check mode)")

    final = CoverCandidate.from_bits(g, ~unpack_words(xbar_out, n))
    # from_bits recounts from scratch; any drift in the kernel's
    # incremental bookkeeping surfaces here
    if final.ones != ones or final.uncovered != unc:
        raise RuntimeError(
            f"kernel state mismatch: ones {ones} vs {final.ones}, "
            f"uncovered {unc} vs {final.uncovered}"
        )

    f_final = ones + n * unc
    if status == 0 or status == 2:
        success = True
    else:
        success = cfg.target is None
    recovered = has_core and bool(np.array_equal(final.bits, core_mask))
    overshoot = max(0, target - f_final) if target >= 0 else 0
    trace = None
    if cfg.trace:
        trace = Trace(
            f=trace_f[:evals].copy(),
            phi=trace_phi[:evals].copy(),
            uncovered=trace_unc[:evals].copy(),
            z=trace_z[:evals].copy(),
        )
    return RunResult(
        iterations=evals,
        first_feasible_at=None if first < 0 else first,
        final=final,
        success=success,
        core_recovered=recovered,
        overshoot=overshoot,
        restarts_used=restarts,
        restart_iterations=restart_pos[: min(restarts, rcap)].copy(),
        trace=trace,
        backend=kernels.BACKEND,
    )


def run_ea(g: Graph, cfg: EAConfig, core=None) -> RunResult:
    """Plain (1+1) EA run."""
    if cfg.restart_length is not None:
        raise ValueError("restart_length is set; use run_ea_with_restarts")
    return _run(g, cfg, core, 0)


def run_ea_with_restarts(g: Graph, cfg: EAConfig, core=None) -> RunResult:
    """(1+1) EA with cold restarts every cfg.restart_length iterations."""
    if cfg.restart_length is None:
        raise ValueError("cfg.restart_length is required for the restart variant")
    return _run(g, cfg, core, cfg.restart_length)
