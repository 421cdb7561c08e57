"""JIT solver kernel.

Mirrors kernels._pure operation for operation (same contract, same
random-draw order); see that module's docstring for the interface.
Constants live at module level as np.uint64 so arithmetic stays in
uint64 instead of being promoted to float64.
"""

from __future__ import annotations

import numpy as np
from numba import njit

_U0 = np.uint64(0)
_U1 = np.uint64(1)
_GOLD = np.uint64(0x9E3779B97F4A7C15)
_MUL1 = np.uint64(0xBF58476D1CE4E5B9)
_MUL2 = np.uint64(0x94D049BB133111EB)
_S30 = np.uint64(30)
_S27 = np.uint64(27)
_S31 = np.uint64(31)
_S11 = np.uint64(11)
_INV53 = 2.0**-53

# SWAR popcount masks
_PM1 = np.uint64(0x5555555555555555)
_PM2 = np.uint64(0x3333333333333333)
_PM4 = np.uint64(0x0F0F0F0F0F0F0F0F)
_PH8 = np.uint64(0x0101010101010101)
_P1 = np.uint64(1)
_P2 = np.uint64(2)
_P4 = np.uint64(4)
_P56 = np.uint64(56)


@njit(inline="always")
def _pc(v):
    v = v - ((v >> _P1) & _PM1)
    v = (v & _PM2) + ((v >> _P2) & _PM2)
    v = (v + (v >> _P4)) & _PM4
    return np.int64((v * _PH8) >> _P56)


@njit(inline="always")
def _next(s):
    s = s + _GOLD
    z = s
    z = (z ^ (z >> _S30)) * _MUL1
    z = (z ^ (z >> _S27)) * _MUL2
    return z ^ (z >> _S31), s


@njit(inline="always")
def _row_overlap(row, xbar):
    acc = np.int64(0)
    for w in range(xbar.shape[0]):
        acc += _pc(row[w] & xbar[w])
    return acc


@njit(inline="always")
def _count_uncovered(adj, xbar, n):
    acc = np.int64(0)
    for v in range(n):
        if (xbar[v >> 6] >> np.uint64(v & 63)) & _U1:
            acc += _row_overlap(adj[v], xbar)
    return acc >> 1


@njit(inline="always")
def _toggle(adj, xbar, v, ones, unc):
    w = v >> 6
    b = _U1 << np.uint64(v & 63)
    if xbar[w] & b:
        unc -= _row_overlap(adj[v], xbar)
        xbar[w] ^= b
        ones += 1
    else:
        xbar[w] ^= b
        unc += _row_overlap(adj[v], xbar)
        ones -= 1
    return ones, unc


@njit(cache=True, nogil=True)
def run_chain(adj, n, seed, flip_cdf, target, budget, stop_feasible,
              restart_len, core, has_core, xbar_out,
              trace_f, trace_phi, trace_unc, trace_z, trace_on,
              restart_pos, check):
    W = adj.shape[1]
    tail = n & 63
    tail_mask = (_U1 << np.uint64(tail)) - _U1
    cap = trace_f.shape[0]
    rcap = restart_pos.shape[0]
    xbar = xbar_out
    s = seed

    for w in range(W):
        v64, s = _next(s)
        xbar[w] = v64
    if tail != 0:
        xbar[W - 1] &= tail_mask
    ones = np.int64(n)
    for w in range(W):
        ones -= _pc(xbar[w])
    unc = _count_uncovered(adj, xbar, n)
    f = ones + n * unc

    evals = np.int64(1)
    first = np.int64(-1)
    restarts = np.int64(0)

    if trace_on:
        trace_f[0] = f
        if target >= 0:
            phi = f - target
            if phi < 0:
                phi = 0
            trace_phi[0] = phi
        else:
            trace_phi[0] = -1
        trace_unc[0] = unc
        if has_core:
            trace_z[0] = _row_overlap(core, xbar)
        else:
            trace_z[0] = -1
    if unc == 0:
        first = np.int64(0)
    if target >= 0 and f <= target:
        return np.int64(0), evals, first, restarts, ones, unc
    if stop_feasible and unc == 0:
        return np.int64(2), evals, first, restarts, ones, unc

    perm = np.arange(n, dtype=np.int64)
    flips = np.empty(n, dtype=np.int64)
    g = np.int64(0)
    while evals < budget:
        if restart_len > 0 and g > 0 and g % restart_len == 0:
            for w in range(W):
                v64, s = _next(s)
                xbar[w] = v64
            if tail != 0:
                xbar[W - 1] &= tail_mask
            ones = np.int64(n)
            for w in range(W):
                ones -= _pc(xbar[w])
            unc = _count_uncovered(adj, xbar, n)
            f = ones + n * unc
            if restarts < rcap:
                restart_pos[restarts] = g
            restarts += 1
        v64, s = _next(s)
        u = np.float64(v64 >> _S11) * _INV53
        c = np.int64(0)
        while u >= flip_cdf[c]:
            c += 1
        for i in range(c):
            bound = np.uint64(n - i)
            reject = (_U0 - bound) % bound
            while True:
                v64, s = _next(s)
                if v64 >= reject:
                    break
            j = i + np.int64(v64 % bound)
            tmp = perm[i]
            perm[i] = perm[j]
            perm[j] = tmp
            flips[i] = perm[i]
        for i in range(c):
            ones, unc = _toggle(adj, xbar, flips[i], ones, unc)
        evals += 1
        fn = ones + n * unc
        if fn <= f:
            f = fn
        else:
            for i in range(c):
                ones, unc = _toggle(adj, xbar, flips[i], ones, unc)
        if check:
            o2 = np.int64(n)
            for w in range(W):
                o2 -= _pc(xbar[w])
            if o2 != ones or _count_uncovered(adj, xbar, n) != unc \
                    or f != ones + n * unc:
                return np.int64(4), evals, first, restarts, ones, unc
        g += 1
        row = evals - 1
        if trace_on:
            if row >= cap:
                return np.int64(3), evals, first, restarts, ones, unc
            trace_f[row] = f
            if target >= 0:
                phi = f - target
                if phi < 0:
                    phi = 0
                trace_phi[row] = phi
            else:
                trace_phi[row] = -1
            trace_unc[row] = unc
            if has_core:
                trace_z[row] = _row_overlap(core, xbar)
            else:
                trace_z[row] = -1
        if unc == 0 and first < 0:
            first = row
        if target >= 0 and f <= target:
            return np.int64(0), evals, first, restarts, ones, unc
        if stop_feasible and unc == 0:
            return np.int64(2), evals, first, restarts, ones, unc
    return np.int64(1), evals, first, restarts, ones, unc


@njit(cache=True, nogil=True)
def count_uncovered_packed(adj, xbar, n):
    """Uncovered-edge count for a packed complement bitset."""
    return _count_uncovered(adj, xbar, n)
