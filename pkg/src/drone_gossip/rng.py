"""Deterministic 64-bit random streams shared by both simulation kernels.

The generator is xoshiro256++ seeded through splitmix64.  The compiled
kernel carries a line-for-line C translation of the same recurrence, so a
given seed produces bit-identical event streams no matter which kernel
runs.  Replicated runs (sweeps, replications) draw their seeds from
``derive_stream_seed`` so every replica gets a disjoint stream.
"""

from __future__ import annotations

MASK64 = (1 << 64) - 1
GOLDEN = 0x9E3779B97F4A7C15
# 2**-53, exactly representable; (x >> 11) + 0.5 scaled by this lands in (0, 1).
TWO_NEG53 = 2.0 ** -53


def splitmix64(state: int) -> tuple[int, int]:
    """Advance a splitmix64 state once; returns (new_state, output)."""
    state = (state + GOLDEN) & MASK64
    z = state
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return state, z ^ (z >> 31)


def seed_state(seed: int) -> tuple[int, int, int, int]:
    """Expand a 64-bit seed into a valid (nonzero) xoshiro256++ state."""
    s = seed & MASK64
    words = []
    for _ in range(4):
        s, z = splitmix64(s)
        words.append(z)
    if not any(words):
        words[0] = GOLDEN  # the all-zero state is a fixed point of xoshiro
    return tuple(words)


def derive_stream_seed(seed: int, index: int) -> int:
    """Seed for replica ``index`` of a base seed; replicas get disjoint streams."""
    _, z = splitmix64((seed ^ ((index + 1) * GOLDEN)) & MASK64)
    return z


class Xoshiro256PP:
    """Pure-Python xoshiro256++ stream (reference implementation)."""

    __slots__ = ("s0", "s1", "s2", "s3")

    def __init__(self, seed: int):
        self.s0, self.s1, self.s2, self.s3 = seed_state(seed)

    def state(self) -> tuple[int, int, int, int]:
        return (self.s0, self.s1, self.s2, self.s3)

    def next_u64(self) -> int:
        s0, s1, s2, s3 = self.s0, self.s1, self.s2, self.s3
        x = (s0 + s3) & MASK64
        result = (((x << 23) | (x >> 41)) + s0) & MASK64
        t = (s1 << 17) & MASK64
        s2 ^= s0
        s3 ^= s1
        s1 ^= s2
        s0 ^= s3
        s2 ^= t
        s3 = ((s3 << 45) | (s3 >> 19)) & MASK64
        self.s0, self.s1, self.s2, self.s3 = s0, s1, s2, s3
        return result

    def next_double(self) -> float:
        """Uniform double in the open interval (0, 1)."""
        return ((self.next_u64() >> 11) + 0.5) * TWO_NEG53
