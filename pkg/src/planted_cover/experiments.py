"""Batch experiment harness.

An experiment spec is a grid: n values crossed with k rules (constant,
ceil(ln n), ceil(sqrt n), or a range) and p rules (constant, 1/n, or a
range).  Each resulting (n, k, p) cell runs a fixed number of
independent trials; every trial samples a fresh planted instance and
one solver run on it, with both seeds derived from the master seed and
the (cell, trial) ordinals.  Results are therefore reproducible from
the spec alone, independent of worker count or scheduling.

``runtime`` throughout means fitness evaluations, not wall time.
"""

from __future__ import annotations

import math
import os
import statistics
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace

import numpy as np

from .ea import EAConfig, default_restart_length, run_ea, run_ea_with_restarts
from .graph import count_uncovered_edges
from .model import ModelParams, sample_instance
from .rng import derive_seed

TRIALS_HEADER = (
    "experiment,n,k,p,trial,seed,runtime,first_feasible,success,recovered,overshoot,restarts"
)
SUMMARY_HEADER = (
    "experiment,n,k,p,trials,failures,mean_runtime,std_runtime,mean_overshoot,"
    "recovery_rate,mean_first_feasible"
)


@dataclass(frozen=True)
class KRule:
    """Core-size rule: one of const(value), log, sqrt, range(start, stop, step)."""

    kind: str
    value: int | None = None
    start: int | None = None
    stop: int | None = None
    step: int | None = None

    def __post_init__(self) -> None:
        if self.kind == "const":
            if self.value is None or self.value < 1:
                raise ValueError(f"const k rule needs value >= 1, got {self.value}")
        elif self.kind in ("log", "sqrt"):
            pass
        elif self.kind == "range":
            if self.start is None or self.stop is None or self.step is None:
                raise ValueError("range k rule needs start, stop, step")
            if self.start < 1 or self.stop < self.start or self.step < 1:
                raise ValueError(f"bad k range {self.start}..{self.stop} step {self.step}")
        else:
            raise ValueError(f"unknown k rule kind {self.kind!r}")

    def expand(self, n: int) -> list[int]:
        if self.kind == "const":
            return [int(self.value)]
        if self.kind == "log":
            return [max(1, math.ceil(math.log(n)))]
        if self.kind == "sqrt":
            return [max(1, math.ceil(math.sqrt(n)))]
        return list(range(self.start, self.stop + 1, self.step))

    def label(self) -> str:
        if self.kind == "const":
            return f"k{self.value}"
        if self.kind == "range":
            return f"k{self.start}-{self.stop}"
        return f"k-{self.kind}"


@dataclass(frozen=True)
class PRule:
    """Edge-probability rule: const(value), inverse_n, or range(start, stop, step)."""

    kind: str
    value: float | None = None
    start: float | None = None
    stop: float | None = None
    step: float | None = None

    def __post_init__(self) -> None:
        if self.kind == "const":
            if self.value is None or not 0.0 < self.value <= 1.0:
                raise ValueError(f"const p rule needs value in (0, 1], got {self.value}")
        elif self.kind == "inverse_n":
            pass
        elif self.kind == "range":
            if self.start is None or self.stop is None or self.step is None:
                raise ValueError("range p rule needs start, stop, step")
            if not (0.0 < self.start <= self.stop <= 1.0) or self.step <= 0.0:
                raise ValueError(f"bad p range {self.start}..{self.stop} step {self.step}")
        else:
            raise ValueError(f"unknown p rule kind {self.kind!r}")

    def expand(self, n: int) -> list[float]:
        if self.kind == "const":
            return [float(self.value)]
        if self.kind == "inverse_n":
            return [1.0 / n]
        count = int(round((self.stop - self.start) / self.step)) + 1
        vals = [round(self.start + i * self.step, 10) for i in range(count)]
        return [v for v in vals if v <= 1.0]


def _rule_from_json(cls, obj: dict):
    known = {"kind", "value", "start", "stop", "step"}
    extra = set(obj) - known
    if extra:
        raise ValueError(f"unknown rule fields {sorted(extra)}")
    return cls(**obj)


def _rule_to_json(rule) -> dict:
    out = {"kind": rule.kind}
    for key in ("value", "start", "stop", "step"):
        v = getattr(rule, key)
        if v is not None:
            out[key] = v
    return out


@dataclass(frozen=True)
class ExperimentSpec:
    """Full description of one experiment grid."""

    name: str
    n_values: tuple[int, ...]
    k_rules: tuple[KRule, ...]
    p_rules: tuple[PRule, ...]
    trials: int = 100
    algorithm: str = "plain"
    restart_length: int | str | None = None
    budget: int | None = None
    budget_factor: float = 1.0e4
    master_seed: int = 0

    def __post_init__(self) -> None:
        object.__setattr__(self, "n_values", tuple(int(v) for v in self.n_values))
        object.__setattr__(self, "k_rules", tuple(self.k_rules))
        object.__setattr__(self, "p_rules", tuple(self.p_rules))
        if not self.name or any(ch in self.name for ch in ",\n\r"):
            raise ValueError(f"experiment name {self.name!r} is empty or not CSV-safe")
        if not self.n_values or min(self.n_values) < 2:
            raise ValueError("n_values must be non-empty with every n >= 2")
        if not self.k_rules or not self.p_rules:
            raise ValueError("at least one k rule and one p rule are required")
        if self.trials < 1:
            raise ValueError(f"trials must be >= 1, got {self.trials}")
        if self.algorithm not in ("plain", "restarts"):
            raise ValueError(f"algorithm must be 'plain' or 'restarts', got {self.algorithm!r}")
        if self.algorithm == "restarts":
            ok = self.restart_length == "auto" or (
                isinstance(self.restart_length, int) and self.restart_length >= 1
            )
            if not ok:
                raise ValueError("restarts algorithm needs restart_length 'auto' or int >= 1")
        if self.budget is not None and self.budget < 1:
            raise ValueError(f"budget must be >= 1, got {self.budget}")
        if self.budget is None and self.budget_factor <= 0:
            raise ValueError(f"budget_factor must be > 0, got {self.budget_factor}")

    @classmethod
    def from_json(cls, obj: dict) -> "ExperimentSpec":
        kw = dict(obj)
        kw["k_rules"] = tuple(_rule_from_json(KRule, r) for r in kw.get("k_rules", ()))
        kw["p_rules"] = tuple(_rule_from_json(PRule, r) for r in kw.get("p_rules", ()))
        if "n_values" in kw:
            kw["n_values"] = tuple(kw["n_values"])
        try:
            return cls(**kw)
        except TypeError as exc:
            raise ValueError(f"bad experiment spec: {exc}") from exc

    def to_json(self) -> dict:
        out = {
            "name": self.name,
            "n_values": list(self.n_values),
            "k_rules": [_rule_to_json(r) for r in self.k_rules],
            "p_rules": [_rule_to_json(r) for r in self.p_rules],
            "trials": self.trials,
            "algorithm": self.algorithm,
            "budget_factor": self.budget_factor,
            "master_seed": self.master_seed,
        }
        if self.restart_length is not None:
            out["restart_length"] = self.restart_length
        if self.budget is not None:
            out["budget"] = self.budget
        return out


@dataclass(frozen=True)
class Cell:
    """One (n, k, p) grid point with its resolved run parameters."""

    index: int
    experiment: str
    n: int
    k: int
    p: float
    budget: int
    restart_length: int


def default_budget(n: int, factor: float) -> int:
    """Evaluation cap factor * n * ceil(ln n)."""
    return max(1, int(factor * n * max(1, math.ceil(math.log(n)))))


def expand_cells(spec: ExperimentSpec) -> list[Cell]:
    """Flatten the grid in deterministic order: n outer, then k rule,
    then k, then p rule, then p.  Invalid cells reject the whole spec
    before any trial runs."""
    multi_k = len(spec.k_rules) > 1
    cells: list[Cell] = []
    for n in spec.n_values:
        for k_rule in spec.k_rules:
            label = f"{spec.name}:{k_rule.label()}" if multi_k else spec.name
            for k in k_rule.expand(n):
                if k > n:
                    raise ValueError(f"cell rejected: k={k} > n={n} in {spec.name}")
                for p_rule in spec.p_rules:
                    for p in p_rule.expand(n):
                        if not 0.0 < p <= 1.0:
                            raise ValueError(f"cell rejected: p={p} outside (0, 1]")
                        budget = spec.budget or default_budget(n, spec.budget_factor)
                        if spec.algorithm == "restarts":
                            rl = (
                                default_restart_length(n)
                                if spec.restart_length == "auto"
                                else int(spec.restart_length)
                            )
                        else:
                            rl = 0
                        cells.append(Cell(len(cells), label, n, k, p, budget, rl))
    return cells


@dataclass
class TrialRecord:
    """One trial's outcome; final_bits is kept for re-verification and
    never serialized."""

    experiment: str
    n: int
    k: int
    p: float
    trial: int
    seed: int
    runtime: int
    first_feasible: int | None
    success: bool
    recovered: bool
    overshoot: int
    restarts: int
    final_bits: np.ndarray | None = field(default=None, repr=False)


@dataclass(frozen=True)
class CellSummary:
    """Aggregates over one cell; runtime/overshoot statistics cover
    successful trials only, mean_first_feasible covers every trial
    that reached feasibility."""

    experiment: str
    n: int
    k: int
    p: float
    trials: int
    failures: int
    mean_runtime: float | None
    std_runtime: float | None
    mean_overshoot: float | None
    recovery_rate: float
    mean_first_feasible: float | None
    degenerate_std: bool = False


@dataclass
class ExperimentResult:
    spec: ExperimentSpec
    cells: list[Cell]
    records: list[TrialRecord]
    summaries: list[CellSummary]


def run_trial(spec: ExperimentSpec, cell: Cell, trial: int) -> TrialRecord:
    """Run one trial of one cell, fully determined by the spec."""
    trial_seed = derive_seed(spec.master_seed, cell.index, trial)
    inst = sample_instance(
        ModelParams(cell.n, cell.k, cell.p, derive_seed(trial_seed, 0))
    )
    cfg = EAConfig(
        seed=derive_seed(trial_seed, 1),
        target=cell.k,
        budget=cell.budget,
        restart_length=cell.restart_length if cell.restart_length > 0 else None,
    )
    if cell.restart_length > 0:
        res = run_ea_with_restarts(inst.graph, cfg, core=inst.core)
    else:
        res = run_ea(inst.graph, cfg, core=inst.core)
    return TrialRecord(
        experiment=cell.experiment,
        n=cell.n,
        k=cell.k,
        p=cell.p,
        trial=trial,
        seed=trial_seed,
        runtime=res.iterations,
        first_feasible=res.first_feasible_at,
        success=res.success,
        recovered=res.core_recovered,
        overshoot=res.overshoot,
        restarts=res.restarts_used,
        final_bits=res.final.bits,
    )


def aggregate(records: list[TrialRecord], verify: bool = True) -> CellSummary:
    """Fold one cell's records into a CellSummary.

    With ``verify`` the instance behind each successful trial is
    re-derived from the recorded seed and the final cover is checked
    against it (covers every edge, fitness within target, recovery
    flag consistent)."""
    if not records:
        raise ValueError("cannot aggregate an empty cell")
    key = (records[0].experiment, records[0].n, records[0].k, records[0].p)
    for r in records:
        if (r.experiment, r.n, r.k, r.p) != key:
            raise ValueError(f"mixed cells in aggregate: {key} vs {(r.experiment, r.n, r.k, r.p)}")
    if verify:
        for r in records:
            if r.success and r.final_bits is not None:
                _verify_record(r)
    succ = [r for r in records if r.success]
    feas = [r for r in records if r.first_feasible is not None]
    runtimes = [r.runtime for r in succ]
    degenerate = len(runtimes) == 1
    return CellSummary(
        experiment=key[0],
        n=key[1],
        k=key[2],
        p=key[3],
        trials=len(records),
        failures=len(records) - len(succ),
        mean_runtime=statistics.fmean(runtimes) if runtimes else None,
        std_runtime=(statistics.stdev(runtimes) if len(runtimes) > 1 else 0.0)
        if runtimes
        else None,
        mean_overshoot=statistics.fmean([r.overshoot for r in succ]) if succ else None,
        recovery_rate=sum(1 for r in records if r.recovered) / len(records),
        mean_first_feasible=statistics.fmean([r.first_feasible for r in feas])
        if feas
        else None,
        degenerate_std=degenerate,
    )


def _verify_record(r: TrialRecord) -> None:
    trial_seed = r.seed
    inst = sample_instance(ModelParams(r.n, r.k, r.p, derive_seed(trial_seed, 0)))
    unc = count_uncovered_edges(inst.graph, r.final_bits)
    ones = int(np.count_nonzero(r.final_bits))
    if unc != 0 or ones + r.n * unc > r.k:
        raise RuntimeError(
            f"re-verification failed for {r.experiment} n={r.n} k={r.k} p={r.p} "
            f"trial {r.trial}: uncovered={unc}, |x|={ones}, target {r.k}"
        )
    if r.recovered != bool(np.array_equal(r.final_bits, inst.core)):
        raise RuntimeError(
            f"recovery flag inconsistent for {r.experiment} trial {r.trial}"
        )


def resolve_workers(workers: int | None = None) -> int:
    """Explicit argument, else PLANTED_COVER_WORKERS, else CPU count."""
    if workers is not None:
        if workers < 1:
            raise ValueError(f"workers must be >= 1, got {workers}")
        return workers
    env = os.environ.get("PLANTED_COVER_WORKERS", "").strip()
    if env:
        return max(1, int(env))
    return os.cpu_count() or 1


def run_experiment(
    spec: ExperimentSpec, workers: int | None = None, verify: bool = True
) -> ExperimentResult:
    """Run every trial of every cell and aggregate per cell.

    Trials are independent and may run on a thread pool; record order
    and all outputs depend only on the spec."""
    cells = expand_cells(spec)
    jobs = [(cell, t) for cell in cells for t in range(spec.trials)]
    nworkers = resolve_workers(workers)
    if nworkers == 1:
        records = [run_trial(spec, cell, t) for cell, t in jobs]
    else:
        with ThreadPoolExecutor(max_workers=nworkers) as pool:
            futures = [pool.submit(run_trial, spec, cell, t) for cell, t in jobs]
            records = [f.result() for f in futures]
    summaries = []
    for cell in cells:
        chunk = records[cell.index * spec.trials : (cell.index + 1) * spec.trials]
        summaries.append(aggregate(chunk, verify=verify))
    return ExperimentResult(spec=spec, cells=cells, records=records, summaries=summaries)


def _csv_value(v) -> str:
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return repr(v)
    return str(v)


def write_trials_csv(records: list[TrialRecord], path) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(TRIALS_HEADER + "\n")
        for r in records:
            row = [
                r.experiment, r.n, r.k, r.p, r.trial, r.seed, r.runtime,
                r.first_feasible, r.success, r.recovered, r.overshoot, r.restarts,
            ]
            fh.write(",".join(_csv_value(v) for v in row) + "\n")


def write_summary_csv(summaries: list[CellSummary], path) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(SUMMARY_HEADER + "\n")
        for s in summaries:
            row = [
                s.experiment, s.n, s.k, s.p, s.trials, s.failures,
                s.mean_runtime, s.std_runtime, s.mean_overshoot,
                s.recovery_rate, s.mean_first_feasible,
            ]
            fh.write(",".join(_csv_value(v) for v in row) + "\n")


# --- presets -----------------------------------------------------------

PRESET_NAMES = (
    "scaling-dense",
    "scaling-sparse",
    "runtime-vs-p",
    "runtime-vs-k",
    "heatmap-kp",
    "core-recovery",
    "overshoot",
)

_SCALING_N = tuple(range(100, 1001, 100))
_GRID_N = (200, 1000)
_K_GRID = KRule("range", start=10, stop=100, step=10)
_P_GRID = PRule("range", start=0.05, stop=0.95, step=0.05)


def _preset_spec(name: str, seed: int) -> ExperimentSpec:
    if name == "scaling-dense":
        return ExperimentSpec(
            name=name,
            n_values=_SCALING_N,
            k_rules=(KRule("log"), KRule("sqrt")),
            p_rules=(PRule("const", value=0.5),),
            master_seed=seed,
        )
    if name == "scaling-sparse":
        return ExperimentSpec(
            name=name,
            n_values=_SCALING_N,
            k_rules=(KRule("log"), KRule("sqrt")),
            p_rules=(PRule("inverse_n"),),
            master_seed=seed,
        )
    # remaining families all read off the same (n, k, p) sweep
    return ExperimentSpec(
        name=name,
        n_values=_GRID_N,
        k_rules=(_K_GRID,),
        p_rules=(_P_GRID,),
        master_seed=seed,
    )


def preset(name: str, scale: int = 1, master_seed: int | None = None) -> ExperimentSpec:
    """Named experiment family, optionally shrunk by an integer scale
    divisor (n and absolute k values are divided, probabilities and
    derived k rules are untouched)."""
    if name not in PRESET_NAMES:
        raise ValueError(f"unknown preset {name!r}; choose from {', '.join(PRESET_NAMES)}")
    if scale < 1:
        raise ValueError(f"scale must be >= 1, got {scale}")
    seed = PRESET_NAMES.index(name) + 1 if master_seed is None else master_seed
    spec = _preset_spec(name, seed)
    if scale == 1:
        return spec
    n_values = tuple(dict.fromkeys(max(2, n // scale) for n in spec.n_values))
    k_rules = tuple(_scale_k_rule(r, scale) for r in spec.k_rules)
    return replace(spec, n_values=n_values, k_rules=k_rules)


def _scale_k_rule(rule: KRule, scale: int) -> KRule:
    if rule.kind == "const":
        return KRule("const", value=max(1, rule.value // scale))
    if rule.kind == "range":
        start = max(1, rule.start // scale)
        stop = max(start, rule.stop // scale)
        step = max(1, rule.step // scale)
        return KRule("range", start=start, stop=stop, step=step)
    return rule
