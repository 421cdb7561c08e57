"""Deterministic random number generation based on splitmix64.

Every stochastic component of the package draws from this one generator
family so that runs are reproducible from a single integer seed and so
that the JIT and pure-Python solver backends consume bit-identical
streams.  The generator is counter-based: the i-th output of a stream
seeded with s is ``mix64(s + (i + 1) * GOLDEN_GAMMA)``, which allows the
same stream to be produced either one value at a time or as a vectorized
numpy block.

Child seeds are derived, not reused: ``derive_seed(master, *path)``
hashes an integer path below a master seed, so independent components
(core selection, edge coins, run streams, experiment trials) never share
a stream.
"""

from __future__ import annotations

import numpy as np

MASK64 = (1 << 64) - 1

# Weyl increment and finalizer constants of splitmix64.
GOLDEN_GAMMA = 0x9E3779B97F4A7C15
_MIX_MUL1 = 0xBF58476D1CE4E5B9
_MIX_MUL2 = 0x94D049BB133111EB


def mix64(z: int) -> int:
    """Bijective 64-bit finalizer (splitmix64 output function)."""
    z &= MASK64
    z = ((z ^ (z >> 30)) * _MIX_MUL1) & MASK64
    z = ((z ^ (z >> 27)) * _MIX_MUL2) & MASK64
    return z ^ (z >> 31)


def derive_seed(master: int, *path: int) -> int:
    """Derive a child seed from a master seed and an integer path.

    The recipe is fixed and documented so external tooling can replay
    it: start from ``h = mix64(master)``, then for each path component
    ``c`` update ``h = mix64(h ^ (c * GOLDEN_GAMMA mod 2**64))``.
    """
    h = mix64(master)
    for part in path:
        h = mix64(h ^ ((part * GOLDEN_GAMMA) & MASK64))
    return h


class SplitMix64:
    """Sequential splitmix64 stream.

    Output i (0-based) equals ``mix64(seed + (i + 1) * GOLDEN_GAMMA)``,
    so a stream is also addressable randomly; :func:`stream_u64` produces
    the same values as repeated :meth:`next_u64` calls.
    """

    __slots__ = ("state",)

    def __init__(self, seed: int) -> None:
        self.state = seed & MASK64

    def next_u64(self) -> int:
        self.state = (self.state + GOLDEN_GAMMA) & MASK64
        return mix64(self.state)

    def random(self) -> float:
        """Uniform float in [0, 1) with 53 bits of precision."""
        return (self.next_u64() >> 11) * 2.0**-53

    def below(self, bound: int) -> int:
        """Uniform integer in [0, bound), unbiased via rejection."""
        if bound <= 0:
            raise ValueError(f"bound must be positive, got {bound}")
        # Reject the low residue chunk so every value is equally likely.
        reject = (1 << 64) % bound
        while True:
            v = self.next_u64()
            if v >= reject:
                return v % bound

    def spawn(self, *path: int) -> "SplitMix64":
        """Child stream keyed by path; independent of this stream."""
        return SplitMix64(derive_seed(self.state, *path))


def stream_u64(seed: int, count: int) -> np.ndarray:
    """Vectorized stream: the first `count` outputs of SplitMix64(seed)."""
    if count < 0:
        raise ValueError(f"count must be >= 0, got {count}")
    idx = np.arange(1, count + 1, dtype=np.uint64)
    z = np.uint64(seed & MASK64) + np.uint64(GOLDEN_GAMMA) * idx
    z = (z ^ (z >> np.uint64(30))) * np.uint64(_MIX_MUL1)
    z = (z ^ (z >> np.uint64(27))) * np.uint64(_MIX_MUL2)
    return z ^ (z >> np.uint64(31))


def stream_random(seed: int, count: int) -> np.ndarray:
    """Vectorized uniform floats in [0, 1), matching SplitMix64.random."""
    return (stream_u64(seed, count) >> np.uint64(11)) * 2.0**-53
