"""Pure-Python solver kernel.

Reference implementation of the run loop; the numba kernel mirrors it
operation for operation, including the order in which random draws are
consumed, so both backends produce bit-identical runs from the same
seed.  Bitsets are arbitrary-precision Python ints here.

Kernel contract (shared with the numba backend)
-----------------------------------------------
``run_chain(adj, n, seed, flip_cdf, target, budget, stop_feasible,
restart_len, core, has_core, xbar_out, trace_f, trace_phi, trace_unc,
trace_z, trace_on, restart_pos, check)``

* ``adj``: (n, W) uint64 packed adjacency rows.
* ``seed``: numpy uint64 scalar; stream state starts there.
* ``flip_cdf``: float64 CDF of the per-step flip count, length n + 1,
  last entry exactly 1.0.
* ``target``: stop once fitness <= target; -1 disables.
* ``budget``: maximum number of fitness evaluations (always finite).
* ``restart_len``: redraw the current point every this many iterations;
  0 disables.  Redraws are not counted as evaluations.
* ``core`` / ``has_core``: packed vertex subset whose overlap with the
  outside-cover set is reported in the trace z column.
* ``xbar_out``: (W,) uint64 buffer; receives the final complement
  bitset (bit v set means v is outside the cover).
* ``trace_*``: int64 buffers, one slot per evaluation; pass length-1
  dummies with ``trace_on`` false to skip tracing.
* ``restart_pos``: int64 buffer recording iteration indices at which
  redraws happened (first len(restart_pos) of them).
* ``check``: recount size and uncovered edges from scratch after every
  iteration and fail on any disagreement with the incremental state.

Returns ``(status, evals, first_feasible, restarts, ones, uncovered)``
where status is 0 target reached, 1 budget exhausted, 2 feasibility
stop, 3 trace buffer full, 4 check-mode mismatch; ``first_feasible`` is
the evaluation index at which the current point first had no uncovered
edge, -1 if never.
"""

from __future__ import annotations

import numpy as np

_MASK64 = (1 << 64) - 1
_GOLD = 0x9E3779B97F4A7C15
_MUL1 = 0xBF58476D1CE4E5B9
_MUL2 = 0x94D049BB133111EB
_INV53 = 2.0**-53


def run_chain(adj, n, seed, flip_cdf, target, budget, stop_feasible,
              restart_len, core, has_core, xbar_out,
              trace_f, trace_phi, trace_unc, trace_z, trace_on,
              restart_pos, check):
    W = adj.shape[1]
    rows = [int.from_bytes(adj[v].tobytes(), "little") for v in range(n)]
    core_int = int.from_bytes(np.ascontiguousarray(core).tobytes(), "little")
    full = (1 << n) - 1
    cap = trace_f.shape[0]
    rcap = restart_pos.shape[0]
    s = int(seed)

    def next_u64():
        nonlocal s
        s = (s + _GOLD) & _MASK64
        z = s
        z = ((z ^ (z >> 30)) * _MUL1) & _MASK64
        z = ((z ^ (z >> 27)) * _MUL2) & _MASK64
        return z ^ (z >> 31)

    def draw_point():
        x = 0
        for w in range(W):
            x |= next_u64() << (64 * w)
        return x & full

    def count_uncovered(x):
        acc = 0
        rem = x
        while rem:
            v = (rem & -rem).bit_length() - 1
            acc += (rows[v] & x).bit_count()
            rem &= rem - 1
        return acc >> 1

    xbar = draw_point()
    ones = n - xbar.bit_count()
    unc = count_uncovered(xbar)
    f = ones + n * unc

    def record(row):
        trace_f[row] = f
        trace_phi[row] = max(0, f - target) if target >= 0 else -1
        trace_unc[row] = unc
        trace_z[row] = (core_int & xbar).bit_count() if has_core else -1

    def flush():
        for w in range(W):
            xbar_out[w] = np.uint64((xbar >> (64 * w)) & _MASK64)

    evals = 1
    first = -1
    restarts = 0
    if trace_on:
        record(0)
    if unc == 0:
        first = 0
    if target >= 0 and f <= target:
        flush()
        return 0, evals, first, restarts, ones, unc
    if stop_feasible and unc == 0:
        flush()
        return 2, evals, first, restarts, ones, unc

    perm = list(range(n))
    flips = [0] * n
    g = 0
    while evals < budget:
        if restart_len > 0 and g > 0 and g % restart_len == 0:
            xbar = draw_point()
            ones = n - xbar.bit_count()
            unc = count_uncovered(xbar)
            f = ones + n * unc
            if restarts < rcap:
                restart_pos[restarts] = g
            restarts += 1
        u = (next_u64() >> 11) * _INV53
        c = 0
        while u >= flip_cdf[c]:
            c += 1
        for i in range(c):
            bound = n - i
            reject = (1 << 64) % bound
            while True:
                v64 = next_u64()
                if v64 >= reject:
                    break
            j = i + v64 % bound
            perm[i], perm[j] = perm[j], perm[i]
            flips[i] = perm[i]
        for i in range(c):
            v = flips[i]
            b = 1 << v
            if xbar & b:
                unc -= (rows[v] & xbar).bit_count()
                xbar ^= b
                ones += 1
            else:
                xbar ^= b
                unc += (rows[v] & xbar).bit_count()
                ones -= 1
        evals += 1
        fn = ones + n * unc
        if fn <= f:
            f = fn
        else:
            for i in range(c):
                v = flips[i]
                b = 1 << v
                if xbar & b:
                    unc -= (rows[v] & xbar).bit_count()
                    xbar ^= b
                    ones += 1
                else:
                    xbar ^= b
                    unc += (rows[v] & xbar).bit_count()
                    ones -= 1
        if check:
            if ones != n - xbar.bit_count() or unc != count_uncovered(xbar) \
                    or f != ones + n * unc:
                flush()
                return 4, evals, first, restarts, ones, unc
        g += 1
        row = evals - 1
        if trace_on:
            if row >= cap:
                flush()
                return 3, evals, first, restarts, ones, unc
            record(row)
        if unc == 0 and first < 0:
            first = row
        if target >= 0 and f <= target:
            flush()
            return 0, evals, first, restarts, ones, unc
        if stop_feasible and unc == 0:
            flush()
            return 2, evals, first, restarts, ones, unc
    flush()
    return 1, evals, first, restarts, ones, unc


def count_uncovered_packed(adj, xbar, n):
    """Uncovered-edge count for a packed complement bitset."""
    x = int.from_bytes(np.ascontiguousarray(xbar).tobytes(), "little")
    acc = 0
    rem = x
    while rem:
        v = (rem & -rem).bit_length() - 1
        acc += (int.from_bytes(adj[v].tobytes(), "little") & x).bit_count()
        rem &= rem - 1
    return acc >> 1
