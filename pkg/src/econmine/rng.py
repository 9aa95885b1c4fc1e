"""Deterministic 64-bit random number generation.

Everything stochastic in the samplers draws from SplitMix64 (Steele, Lea &
Flood's mixing constants, the same generator java.util.SplittableRandom is
built on). It is a pure 64-bit integer recurrence, so a given seed produces
the same stream on every platform and Python version:

    state' = state + 0x9E3779B97F4A7C15          (mod 2^64)
    z = state'
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9     (mod 2^64)
    z = (z ^ (z >> 27)) * 0x94D049BB133111EB     (mod 2^64)
    output = z ^ (z >> 31)

Doubles in [0, 1) take the top 53 bits: (output >> 11) * 2^-53. Bounded
integer draws use ``output % n`` (modulo bias is below 2^-57 for any n that
fits the use cases here).
"""

MASK64 = (1 << 64) - 1

_GAMMA = 0x9E3779B97F4A7C15
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB

_FNV_OFFSET = 0xCBF29CE484222325
_FNV_PRIME = 0x100000001B3


def splitmix64(state):
    """Advance one SplitMix64 step. Returns (new_state, output)."""
    state = (state + _GAMMA) & MASK64
    z = state
    z = ((z ^ (z >> 30)) * _MIX1) & MASK64
    z = ((z ^ (z >> 27)) * _MIX2) & MASK64
    return state, z ^ (z >> 31)


class SplitMix64:
    """Seedable SplitMix64 stream with convenience draws."""

    __slots__ = ("state",)

    def __init__(self, seed):
        self.state = seed & MASK64

    def next_uint64(self):
        self.state, value = splitmix64(self.state)
        return value

    def next_double(self):
        """Uniform double in [0, 1) from the top 53 bits."""
        return (self.next_uint64() >> 11) * 2.0 ** -53

    def next_below(self, n):
        """Uniform integer in [0, n) via modulo reduction."""
        return self.next_uint64() % n


def fnv1a64(data: bytes) -> int:
    """FNV-1a 64-bit hash; stable across runs, unlike builtin hash()."""
    h = _FNV_OFFSET
    for byte in data:
        h = ((h ^ byte) * _FNV_PRIME) & MASK64
    return h


def derive_seed(base_seed: int, label: str) -> int:
    """Derive an independent child seed for a named substream.

    Used to give each corpus partition its own RNG so partitions can be
    trained in any order (or in parallel) with identical results.
    """
    mixed = (base_seed & MASK64) ^ fnv1a64(label.encode("utf-8"))
    _, value = splitmix64(mixed)
    return value
