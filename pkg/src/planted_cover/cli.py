"""Command-line interface.

Subcommands: generate (sample an instance to a file), run (one solver
run), verify (structural checks on an instance), experiment (batch
grid), presets (list built-in experiment families).  Machine-readable
JSON goes to stdout, human-oriented notes to stderr.  Exit codes:
0 success, 2 usage or validation error, 3 run ended by budget
exhaustion without reaching its target.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys

from . import kernels
from .ea import EAConfig, default_restart_length, run_ea, run_ea_with_restarts
from .experiments import (
    PRESET_NAMES,
    ExperimentSpec,
    preset,
    run_experiment,
    write_summary_csv,
    write_trials_csv,
)
from .model import (
    ModelParams,
    core_independence_bound,
    is_delta_heavy,
    max_core_independent_set,
    read_instance,
    sample_instance,
    write_instance,
)
from .oracle import OracleLimit, is_delta_heavy_exhaustive

_PRESET_NOTES = {
    "scaling-dense": "runtime scaling over n at p = 0.5 with k = ceil(ln n) and ceil(sqrt n)",
    "scaling-sparse": "runtime scaling over n at p = 1/n with k = ceil(ln n) and ceil(sqrt n)",
    "runtime-vs-p": "runtime across the edge-probability axis of the (k, p) sweep",
    "runtime-vs-k": "runtime across the core-size axis of the (k, p) sweep",
    "heatmap-kp": "full runtime surface over the (k, p) sweep",
    "core-recovery": "fraction of trials whose final cover is exactly the planted core",
    "overshoot": "slack k - f(final) of successful trials over the (k, p) sweep",
}


def _emit(obj) -> None:
    json.dump(obj, sys.stdout, sort_keys=True)
    sys.stdout.write("\n")


def _note(msg: str) -> None:
    print(msg, file=sys.stderr)


def _restart_len_arg(text: str):
    if text == "auto":
        return "auto"
    return int(text)


def cmd_generate(args) -> int:
    params = ModelParams(n=args.n, k=args.k, p=args.p, seed=args.seed)
    inst = sample_instance(params)
    write_instance(inst, args.out)
    _note(f"wrote M({args.n}, {args.k}, {args.p}) instance with {inst.graph.m} edges to {args.out}")
    _emit({"path": str(args.out), "n": args.n, "k": args.k, "p": args.p,
           "seed": args.seed, "m": inst.graph.m})
    return 0


def _load_or_sample(args):
    if args.instance is not None:
        return read_instance(args.instance)
    missing = [f for f in ("n", "k", "p") if getattr(args, f) is None]
    if missing:
        raise ValueError(
            f"either --instance or all of --n/--k/--p are required (missing {', '.join(missing)})"
        )
    return sample_instance(ModelParams(n=args.n, k=args.k, p=args.p, seed=args.seed))


def cmd_run(args) -> int:
    inst = _load_or_sample(args)
    target = args.target if args.target is not None else inst.k
    if args.no_target:
        target = None
    restart_len = args.restart_len
    if restart_len == "auto":
        restart_len = default_restart_length(inst.n)
    cfg = EAConfig(
        seed=args.run_seed,
        mutation_rate=args.mutation_rate,
        target=target,
        budget=args.budget,
        stop_at_feasible=args.stop_at_feasible,
        restart_length=restart_len,
        trace=args.trace is not None,
    )
    if restart_len is not None:
        res = run_ea_with_restarts(inst.graph, cfg, core=inst.core)
    else:
        res = run_ea(inst.graph, cfg, core=inst.core)
    if args.trace is not None:
        res.trace.to_csv(args.trace)
        _note(f"trace with {len(res.trace)} rows written to {args.trace}")
    out = {
        "n": inst.n,
        "k": inst.k,
        "iterations": res.iterations,
        "first_feasible": res.first_feasible_at,
        "success": res.success,
        "recovered": res.core_recovered,
        "overshoot": res.overshoot,
        "restarts": res.restarts_used,
        "f_final": res.final.ones + inst.n * res.final.uncovered,
        "cover_size": res.final.ones,
        "uncovered": res.final.uncovered,
        "target": target,
        "budget": args.budget,
        "backend": res.backend,
    }
    if restart_len is not None:
        out["restart_length"] = restart_len
    _emit(out)
    if res.success:
        _note(f"reached f={out['f_final']} in {res.iterations} evaluations")
        return 0
    _note(f"budget {args.budget} exhausted at f={out['f_final']}")
    return 3


def cmd_verify(args) -> int:
    inst = read_instance(args.instance)
    n, k, p = inst.params.n, inst.params.k, inst.params.p
    checks = []

    fringe_rows = inst.graph.adj[inst.fringe_mask()]
    from .graph import pack_bool  # local to keep the module surface small
    import numpy as np

    fw = pack_bool(inst.fringe_mask())
    bad = int(np.bitwise_count(fringe_rows & fw).sum()) // 2
    checks.append({
        "name": "fringe-independent",
        "passed": bad == 0,
        "detail": f"{bad} edge(s) between non-core vertices",
    })

    for delta in args.delta or [0.5]:
        try:
            heavy = is_delta_heavy(inst, delta)
            checks.append({
                "name": "delta-heavy",
                "delta": delta,
                "passed": heavy,
                "detail": f"closed-form check against ln(n) = {math.log(n):.4f}",
            })
        except ValueError as exc:
            checks.append({
                "name": "delta-heavy",
                "delta": delta,
                "passed": None,
                "detail": f"not applicable: {exc}",
            })
            continue
        if args.exhaustive:
            limit = OracleLimit(max_subsets=args.exhaustive_cap)
            try:
                heavy_ex = is_delta_heavy_exhaustive(inst, delta, limit)
                checks.append({
                    "name": "delta-heavy-exhaustive",
                    "delta": delta,
                    "passed": heavy_ex == heavy,
                    "detail": f"exhaustive says {heavy_ex}, closed form says {heavy}",
                })
            except ValueError as exc:
                checks.append({
                    "name": "delta-heavy-exhaustive",
                    "delta": delta,
                    "passed": None,
                    "detail": f"skipped: {exc}",
                })

    if k >= 1:
        mis = max_core_independent_set(inst)
        bound = core_independence_bound(k, p)
        checks.append({
            "name": "core-independence",
            "passed": mis <= bound,
            "detail": f"largest core independent set {mis} vs bound {bound:.4f}",
        })

    report = {"n": n, "k": k, "p": p, "checks": checks}
    _emit(report)
    for c in checks:
        state = {True: "pass", False: "FAIL", None: "skip"}[c["passed"]]
        extra = f" delta={c['delta']}" if "delta" in c else ""
        _note(f"[{state}] {c['name']}{extra}: {c['detail']}")
    return 0


def cmd_experiment(args) -> int:
    if args.spec is not None:
        with open(args.spec, "r", encoding="utf-8") as fh:
            spec = ExperimentSpec.from_json(json.load(fh))
        if args.scale != 1:
            raise ValueError("--scale applies to presets only")
    else:
        spec = preset(args.preset, scale=args.scale, master_seed=args.master_seed)
    if args.trials is not None:
        from dataclasses import replace

        spec = replace(spec, trials=args.trials)
    if args.master_seed is not None and args.spec is not None:
        from dataclasses import replace

        spec = replace(spec, master_seed=args.master_seed)

    os.makedirs(args.out, exist_ok=True)
    result = run_experiment(spec)
    trials_path = os.path.join(args.out, f"{spec.name}_trials.csv")
    summary_path = os.path.join(args.out, f"{spec.name}_summary.csv")
    write_trials_csv(result.records, trials_path)
    write_summary_csv(result.summaries, summary_path)
    _note(
        f"{spec.name}: {len(result.cells)} cells x {spec.trials} trials "
        f"({kernels.BACKEND} backend) -> {args.out}"
    )
    _emit({
        "name": spec.name,
        "cells": len(result.cells),
        "trials": len(result.records),
        "trials_csv": trials_path,
        "summary_csv": summary_path,
    })
    return 0


def cmd_presets(args) -> int:
    out = []
    for name in PRESET_NAMES:
        spec = preset(name)
        out.append({
            "name": name,
            "description": _PRESET_NOTES[name],
            "n_values": list(spec.n_values),
            "trials": spec.trials,
        })
    _emit(out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="planted-cover",
        description="Planted vertex cover instances and a (1+1) evolutionary solver.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    g = sub.add_parser("generate", help="sample an instance to a file")
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--k", type=int, required=True)
    g.add_argument("--p", type=float, required=True)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--out", required=True)
    g.set_defaults(func=cmd_generate)

    r = sub.add_parser("run", help="run the solver once")
    r.add_argument("--instance", help="instance file written by generate")
    r.add_argument("--n", type=int)
    r.add_argument("--k", type=int)
    r.add_argument("--p", type=float)
    r.add_argument("--seed", type=int, default=0, help="instance seed when sampling")
    r.add_argument("--run-seed", type=int, default=0)
    r.add_argument("--target", type=int, help="stop at fitness <= target (default: k)")
    r.add_argument("--no-target", action="store_true", help="disable the target policy")
    r.add_argument("--budget", type=int, help="max fitness evaluations")
    r.add_argument("--stop-at-feasible", action="store_true")
    r.add_argument("--restart-len", type=_restart_len_arg,
                   help="cold-restart period: an integer or 'auto' for 3*e*n*ln(n)")
    r.add_argument("--mutation-rate", type=float)
    r.add_argument("--trace", help="write per-evaluation trace CSV here")
    r.set_defaults(func=cmd_run)

    v = sub.add_parser("verify", help="structural checks on an instance")
    v.add_argument("--instance", required=True)
    v.add_argument("--delta", type=float, action="append",
                   help="heaviness fraction(s); default 0.5")
    v.add_argument("--exhaustive", action="store_true",
                   help="cross-check heaviness by subset enumeration")
    v.add_argument("--exhaustive-cap", type=int, default=1_000_000,
                   help="max fringe subsets to enumerate")
    v.set_defaults(func=cmd_verify)

    e = sub.add_parser("experiment", help="run an experiment grid to CSV")
    src = e.add_mutually_exclusive_group(required=True)
    src.add_argument("--preset", choices=PRESET_NAMES)
    src.add_argument("--spec", help="JSON experiment spec file")
    e.add_argument("--scale", type=int, default=1,
                   help="divide preset n and k values by this factor")
    e.add_argument("--trials", type=int, help="override trials per cell")
    e.add_argument("--master-seed", type=int)
    e.add_argument("--out", required=True, help="output directory for CSV files")
    e.set_defaults(func=cmd_experiment)

    p = sub.add_parser("presets", help="list experiment presets")
    p.set_defaults(func=cmd_presets)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError, json.JSONDecodeError, KeyError) as exc:
        _note(f"error: {exc}")
        return 2


if __name__ == "__main__":
    sys.exit(main())
