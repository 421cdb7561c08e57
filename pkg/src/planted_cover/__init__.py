"""Planted vertex cover instances and a (1+1) evolutionary solver.

The package samples random graphs with a planted vertex cover, runs a
penalty-fitness (1+1) evolutionary algorithm (plain or with cold
restarts) on them, verifies the structural properties that govern when
the planted cover is recoverable, and batches the whole pipeline into
reproducible CSV experiments.
"""

from .ea import (
    CoverCandidate,
    EAConfig,
    RunResult,
    Trace,
    default_restart_length,
    fitness,
    mutate,
    potential,
    run_ea,
    run_ea_with_restarts,
)
from .experiments import (
    Cell,
    CellSummary,
    ExperimentResult,
    ExperimentSpec,
    KRule,
    PRule,
    PRESET_NAMES,
    TrialRecord,
    aggregate,
    expand_cells,
    preset,
    run_experiment,
    write_summary_csv,
    write_trials_csv,
)
from .graph import (
    Graph,
    build_graph,
    count_uncovered_edges,
    fringe_degree,
    parse_edge_list,
    read_edge_list,
    to_edge_list,
    write_edge_list,
)
from .kernels import BACKEND
from .model import (
    ModelParams,
    PlantedInstance,
    core_independence_bound,
    is_delta_heavy,
    max_core_independent_set,
    read_instance,
    sample_instance,
    small_k_density_threshold,
    write_instance,
)
from .rng import SplitMix64, derive_seed, mix64, stream_random, stream_u64

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "Cell",
    "CellSummary",
    "CoverCandidate",
    "EAConfig",
    "ExperimentResult",
    "ExperimentSpec",
    "Graph",
    "KRule",
    "ModelParams",
    "PRESET_NAMES",
    "PRule",
    "PlantedInstance",
    "RunResult",
    "SplitMix64",
    "Trace",
    "TrialRecord",
    "aggregate",
    "build_graph",
    "core_independence_bound",
    "count_uncovered_edges",
    "default_restart_length",
    "derive_seed",
    "expand_cells",
    "fitness",
    "fringe_degree",
    "is_delta_heavy",
    "max_core_independent_set",
    "mix64",
    "mutate",
    "parse_edge_list",
    "potential",
    "preset",
    "read_edge_list",
    "read_instance",
    "run_ea",
    "run_ea_with_restarts",
    "run_experiment",
    "sample_instance",
    "small_k_density_threshold",
    "stream_random",
    "stream_u64",
    "to_edge_list",
    "write_edge_list",
    "write_instance",
    "write_summary_csv",
    "write_trials_csv",
]
