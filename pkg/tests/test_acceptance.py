"""Acceptance gate: one test per shipped behavioral guarantee.

Each test prints a single line with the measured value and verdict, so
a full run reads as a checklist.  Tolerances are part of the contract;
loosening them here weakens the package's claims.
"""

import math
import time

import numpy as np

import planted_cover as pc
from planted_cover.ea import CoverCandidate, _flip_cdf
from planted_cover.experiments import (
    ExperimentSpec,
    KRule,
    PRule,
    run_experiment,
    write_trials_csv,
)
from planted_cover.graph import build_graph, pack_bool
from planted_cover.model import ModelParams, sample_instance
from planted_cover.oracle import fitness_brute, is_delta_heavy_exhaustive
from planted_cover.rng import SplitMix64, derive_seed


def _report(capsys, name: str, ok: bool, detail: str) -> None:
    with capsys.disabled():
        print(f"[acceptance] {name}: {detail} -> {'PASS' if ok else 'FAIL'}")
    assert ok, f"{name}: {detail}"


def _random_graph(n, density, rng):
    edges = [
        (u, v)
        for u in range(n)
        for v in range(u + 1, n)
        if rng.random() < density
    ]
    return build_graph(n, edges)


def test_incremental_fitness_equals_full_evaluation(capsys):
    """1000 random graphs (n <= 16): incremental fitness after every
    flip equals both the vectorized recount and the per-edge loop; on
    50 of the graphs every one of the 2^n candidates is checked."""
    t0 = time.time()
    rng = SplitMix64(0xF17)
    mismatches = 0
    checked = 0
    for gi in range(1000):
        if gi < 50:
            n = 6 + int(rng.below(6))  # exhaustive sweep stays tractable
        else:
            n = 4 + int(rng.below(13))
        g = _random_graph(n, 0.15 + 0.6 * rng.random(), rng)
        bits = np.array([rng.random() < 0.5 for _ in range(n)])
        cand = CoverCandidate.from_bits(g, bits)
        for _ in range(5):
            cand.flip(g, int(rng.below(n)))
            inc = pc.fitness(g, cand)
            if inc != pc.fitness(g, cand.bits) or inc != fitness_brute(g, cand.bits):
                mismatches += 1
            checked += 1
        if gi < 50:
            cand = CoverCandidate.from_bits(g, np.zeros(n, dtype=bool))
            if pc.fitness(g, cand) != fitness_brute(g, cand.bits):
                mismatches += 1
            checked += 1
            for i in range(1, 1 << n):
                v = (i & -i).bit_length() - 1  # Gray code walk
                cand.flip(g, v)
                inc = pc.fitness(g, cand)
                if inc != pc.fitness(g, cand.bits) or inc != fitness_brute(g, cand.bits):
                    mismatches += 1
                checked += 1
    dt = time.time() - t0
    _report(
        capsys,
        "incremental fitness",
        mismatches == 0 and dt < 60,
        f"{checked} evaluations on 1000 graphs (50 exhaustive), "
        f"{mismatches} mismatches, {dt:.1f}s",
    )


def test_model_soundness_frequencies(capsys):
    """200 samples of M(100, 10, 0.3): no fringe-fringe edge ever, and
    the pooled core-incident edge frequency sits within 0.3 +/- 0.03."""
    t0 = time.time()
    pairs = 10 * 100 - 10 * 11 // 2
    bad_edges = 0
    total_edges = 0
    for seed in range(200):
        inst = sample_instance(ModelParams(100, 10, 0.3, seed))
        fm = inst.fringe_mask()
        fw = pack_bool(fm)
        bad_edges += int(np.bitwise_count(inst.graph.adj[fm] & fw).sum()) // 2
        total_edges += inst.graph.m
    freq = total_edges / (200 * pairs)
    dt = time.time() - t0
    _report(
        capsys,
        "model soundness",
        bad_edges == 0 and abs(freq - 0.3) <= 0.03,
        f"fringe-fringe edges {bad_edges}, pooled frequency {freq:.4f} "
        f"(target 0.3 +/- 0.03), {dt:.1f}s",
    )


def test_heaviness_closed_form_equals_exhaustive(capsys):
    """200 sampled instances with n <= 12, delta in {0.25, 0.5, 0.75}:
    the closed-form heaviness check and full subset enumeration agree
    on every instance (agreeing to reject degenerate subset sizes also
    counts)."""
    t0 = time.time()
    rng = SplitMix64(0xDE17A)
    agree = 0
    total = 0
    for _ in range(200):
        n = 5 + int(rng.below(8))
        k = 1 + int(rng.below(n - 3))
        p = min(1.0, 0.2 + 0.8 * rng.random())
        inst = sample_instance(ModelParams(n, k, p, int(rng.next_u64())))
        for delta in (0.25, 0.5, 0.75):
            total += 1
            try:
                closed = pc.is_delta_heavy(inst, delta)
            except ValueError:
                try:
                    is_delta_heavy_exhaustive(inst, delta)
                except ValueError:
                    agree += 1
                continue
            if closed == is_delta_heavy_exhaustive(inst, delta):
                agree += 1
    dt = time.time() - t0
    _report(
        capsys,
        "heaviness equivalence",
        agree == total and dt < 60,
        f"{agree}/{total} agreements over 200 instances x 3 deltas, {dt:.1f}s",
    )


def test_core_independent_set_bound_holds(capsys):
    """100 planted cores with k=20, p=0.5: the fraction whose largest
    core independent set exceeds (1 + 2/p) ln k + 1 = 15.98 is at most
    0.10; sizes come from exact enumeration."""
    t0 = time.time()
    bound = pc.core_independence_bound(20, 0.5)
    exceed = 0
    for seed in range(100):
        inst = sample_instance(ModelParams(40, 20, 0.5, derive_seed(0xA15, seed)))
        if pc.max_core_independent_set(inst) > bound:
            exceed += 1
    dt = time.time() - t0
    _report(
        capsys,
        "core independence bound",
        exceed / 100 <= 0.10 and dt < 120,
        f"{exceed}/100 cores above {bound:.2f}, {dt:.1f}s",
    )


def test_feasibility_time_under_bound(capsys):
    """n=200, p=0.5, k=10, 100 trials: the mean evaluation index of
    first feasibility stays below (e n ln n + e n) / 2 = 1712."""
    t0 = time.time()
    n = 200
    bound = (math.e * n * math.log(n) + math.e * n) / 2.0
    total = 0
    for trial in range(100):
        ts = derive_seed(0xFEA5, trial)
        inst = sample_instance(ModelParams(n, 10, 0.5, derive_seed(ts, 0)))
        res = pc.run_ea(
            inst.graph,
            pc.EAConfig(seed=derive_seed(ts, 1), stop_at_feasible=True, budget=10**6),
        )
        assert res.first_feasible_at is not None
        total += res.first_feasible_at
    mean = total / 100
    dt = time.time() - t0
    _report(
        capsys,
        "feasibility time",
        mean < bound and dt < 60,
        f"mean first_feasible {mean:.1f} vs bound {bound:.1f}, {dt:.1f}s",
    )


def test_dense_scaling_shape(capsys):
    """n in {100, 200, 400, 800} at p=0.5, k=ceil(ln n), 100 trials
    each: mean runtime is monotone in n and grows by at most 20x from
    n=100 to n=800."""
    t0 = time.time()
    spec = ExperimentSpec(
        name="accept-scaling",
        n_values=(100, 200, 400, 800),
        k_rules=(KRule("log"),),
        p_rules=(PRule("const", value=0.5),),
        trials=100,
        master_seed=0x5CA1E,
    )
    res = run_experiment(spec, workers=1)
    means = [s.mean_runtime for s in res.summaries]
    fails = sum(s.failures for s in res.summaries)
    monotone = all(a < b for a, b in zip(means, means[1:]))
    ratio = means[-1] / means[0]
    dt = time.time() - t0
    _report(
        capsys,
        "dense scaling shape",
        fails == 0 and monotone and ratio <= 20 and dt < 600,
        f"means {[round(m, 1) for m in means]}, ratio800/100 {ratio:.2f} "
        f"(cap 20), {dt:.1f}s",
    )


def test_recovery_and_overshoot_vs_density(capsys):
    """n=200, k=20, p in {0.1, 0.5, 0.9}, 100 trials: recovery at
    p=0.9 is no lower than at p=0.1, and mean overshoot at p=0.1 is no
    lower than at p=0.9."""
    t0 = time.time()
    spec = ExperimentSpec(
        name="accept-recovery",
        n_values=(200,),
        k_rules=(KRule("const", value=20),),
        p_rules=(
            PRule("const", value=0.1),
            PRule("const", value=0.5),
            PRule("const", value=0.9),
        ),
        trials=100,
        master_seed=0xECC0,
    )
    res = run_experiment(spec, workers=1)
    by_p = {s.p: s for s in res.summaries}
    rec_ok = by_p[0.9].recovery_rate >= by_p[0.1].recovery_rate
    over_ok = (by_p[0.1].mean_overshoot or 0.0) >= (by_p[0.9].mean_overshoot or 0.0)
    dt = time.time() - t0
    _report(
        capsys,
        "recovery vs density",
        rec_ok and over_ok and dt < 600,
        f"recovery {by_p[0.1].recovery_rate:.2f}@p=0.1 {by_p[0.9].recovery_rate:.2f}@p=0.9, "
        f"overshoot {by_p[0.1].mean_overshoot:.3f}@p=0.1 {by_p[0.9].mean_overshoot:.3f}@p=0.9, "
        f"{dt:.1f}s",
    )


def test_restart_schedule_mechanics(capsys):
    """Period 5 with a 12-evaluation budget redraws at iterations 5
    and 10 exactly; the automatic period for n=100 is 3755."""
    inst = sample_instance(ModelParams(40, 5, 0.5, 1))
    res = pc.run_ea_with_restarts(
        inst.graph,
        pc.EAConfig(seed=2, target=0, budget=12, restart_length=5),
        core=inst.core,
    )
    positions = res.restart_iterations.tolist()
    auto = pc.default_restart_length(100)
    ok = positions == [5, 10] and res.iterations == 12 and auto == 3755
    _report(
        capsys,
        "restart mechanics",
        ok,
        f"redraws at {positions} in 12 evals, auto length {auto}",
    )


def test_worker_count_determinism(capsys, tmp_path):
    """The same spec under 1, 4, and 8 workers produces byte-identical
    per-trial CSVs."""
    t0 = time.time()
    spec = ExperimentSpec(
        name="accept-determinism",
        n_values=(24, 36),
        k_rules=(KRule("log"), KRule("sqrt")),
        p_rules=(PRule("const", value=0.4),),
        trials=5,
        master_seed=0xD57,
    )
    blobs = []
    for w in (1, 4, 8):
        res = run_experiment(spec, workers=w)
        path = tmp_path / f"w{w}.csv"
        write_trials_csv(res.records, path)
        blobs.append(path.read_bytes())
    identical = blobs[0] == blobs[1] == blobs[2]
    dt = time.time() - t0
    _report(
        capsys,
        "worker determinism",
        identical and dt < 300,
        f"{len(blobs[0])} CSV bytes identical across 1/4/8 workers, {dt:.1f}s",
    )


def test_monotone_acceptance_and_absorption(capsys):
    """100 traced runs: fitness never increases along the accepted
    chain, uncovered edges never reappear once they hit zero, and the
    potential is non-increasing from first feasibility on."""
    t0 = time.time()
    violations = 0
    for trial in range(100):
        ts = derive_seed(0xAB5, trial)
        inst = sample_instance(ModelParams(60, 8, 0.4, derive_seed(ts, 0)))
        res = pc.run_ea(
            inst.graph,
            pc.EAConfig(
                seed=derive_seed(ts, 1), target=inst.k, budget=10**6, trace=True
            ),
            core=inst.core,
        )
        tr = res.trace
        ff = res.first_feasible_at
        if np.any(np.diff(tr.f) > 0):
            violations += 1
        elif ff is None or np.any(tr.uncovered[ff:] != 0):
            violations += 1
        elif np.any(np.diff(tr.phi[ff:]) > 0):
            violations += 1
    dt = time.time() - t0
    _report(
        capsys,
        "monotone acceptance",
        violations == 0,
        f"0 violations expected, saw {violations} across 100 traced runs, {dt:.1f}s",
    )
