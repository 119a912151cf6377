"""Deterministic 64-bit RNG with cheap per-trial substream derivation.

The generator is splitmix64: state advances by the golden-ratio increment and
each output is the finalizer (xor-shift-multiply hash) of the new state.  Two
properties matter here.  The stream is reproducible from a single integer, and
because the state sequence is an arithmetic progression, any block of outputs
can be produced vectorized without touching Python-level loops.

Trial t of a run gets its own independent state

    state_t = mix64(master_seed XOR (t * GOLDEN))

so trials can run in any order, on any number of workers, and re-running one
trial in isolation reproduces it bit for bit.
"""

from __future__ import annotations

import numpy as np

MASK64 = 0xFFFFFFFFFFFFFFFF
GOLDEN = 0x9E3779B97F4A7C15

# 1/2^53, for mapping 53-bit integers to [0, 1)
_INV53 = 1.0 / (1 << 53)


def mix64(x: int) -> int:
    """splitmix64 finalizer on a 64-bit integer."""
    x &= MASK64
    x ^= x >> 30
    x = (x * 0xBF58476D1CE4E5B9) & MASK64
    x ^= x >> 27
    x = (x * 0x94D049BB133111EB) & MASK64
    x ^= x >> 31
    return x


def _mix64_array(x: np.ndarray) -> np.ndarray:
    # uint64 array arithmetic wraps; silence the overflow warning numpy emits
    with np.errstate(over="ignore"):
        x = x ^ (x >> np.uint64(30))
        x = x * np.uint64(0xBF58476D1CE4E5B9)
        x = x ^ (x >> np.uint64(27))
        x = x * np.uint64(0x94D049BB133111EB)
        x = x ^ (x >> np.uint64(31))
    return x


def trial_seed(master_seed: int, trial_index: int) -> int:
    """Initial state of trial t's substream; recorded per row in run outputs."""
    return mix64((master_seed ^ (trial_index * GOLDEN)) & MASK64)


class SeededRng:
    """splitmix64 stream.  State is one unsigned 64-bit integer."""

    __slots__ = ("state",)

    def __init__(self, state: int):
        self.state = state & MASK64

    @classmethod
    def for_trial(cls, master_seed: int, trial_index: int) -> "SeededRng":
        """Derive the independent stream for one trial of a run."""
        return cls(trial_seed(master_seed, trial_index))

    def next_u64(self) -> int:
        self.state = (self.state + GOLDEN) & MASK64
        return mix64(self.state)

    def uniform(self) -> float:
        """One double in [0, 1)."""
        return (self.next_u64() >> 11) * _INV53

    def uniforms(self, count: int) -> np.ndarray:
        """Block of `count` doubles in [0, 1), advancing the state by count."""
        if count == 0:
            return np.empty(0)
        with np.errstate(over="ignore"):
            states = np.uint64(self.state) + np.uint64(GOLDEN) * np.arange(
                1, count + 1, dtype=np.uint64
            )
        self.state = int(states[-1])
        bits = _mix64_array(states) >> np.uint64(11)
        return bits.astype(np.float64) * _INV53
