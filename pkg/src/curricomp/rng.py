"""Deterministic 64-bit SplitMix-style pseudo-random stream.

The algorithm and its constants are part of this package's reproducibility
contract: a fixed seed must yield the same curricula and study datasets on
every platform and in any reimplementation. State advances by the 64-bit
golden-gamma increment 0x9E3779B97F4A7C15; outputs are finalized with the
shift/multiply mixer using 0xBF58476D1CE4E5B9 and 0x94D049BB133111EB with
shifts 30, 27, 31. Not for cryptographic use.
"""

from __future__ import annotations

from math import cos, log, pi, sqrt

MASK64 = (1 << 64) - 1
GOLDEN_GAMMA = 0x9E3779B97F4A7C15

_MIX_MULT_1 = 0xBF58476D1CE4E5B9
_MIX_MULT_2 = 0x94D049BB133111EB


def mix64(z: int) -> int:
    """Finalization mixer: avalanche a 64-bit value."""
    z &= MASK64
    z = ((z ^ (z >> 30)) * _MIX_MULT_1) & MASK64
    z = ((z ^ (z >> 27)) * _MIX_MULT_2) & MASK64
    return z ^ (z >> 31)


class SplitMix64:
    """Sequential generator over the mixed golden-gamma counter."""

    __slots__ = ("_state",)

    def __init__(self, seed: int):
        self._state = seed & MASK64

    def next_u64(self) -> int:
        self._state = (self._state + GOLDEN_GAMMA) & MASK64
        return mix64(self._state)

    def next_float(self) -> float:
        """Uniform in [0, 1) with 53 bits of precision."""
        return (self.next_u64() >> 11) * 2.0 ** -53

    def next_int(self, lo: int, hi: int) -> int:
        """Uniform integer in the inclusive range [lo, hi]."""
        if hi < lo:
            raise ValueError(f"empty range [{lo}, {hi}]")
        return lo + self.next_u64() % (hi - lo + 1)

    def fork(self) -> "SplitMix64":
        """Independent child stream seeded from this one; advances this
        stream by one draw."""
        return SplitMix64(self.next_u64())

    def gauss(self) -> float:
        """Standard normal deviate by the Box-Muller transform.

        Consumes exactly two uniforms per call (no caching of the second
        deviate), so the draw count stays predictable for reproducibility.
        """
        # u1 in (0, 1] so log(u1) is finite
        u1 = ((self.next_u64() >> 11) + 1) * 2.0 ** -53
        u2 = self.next_float()
        return sqrt(-2.0 * log(u1)) * cos(2.0 * pi * u2)
