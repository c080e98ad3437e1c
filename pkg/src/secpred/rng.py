"""Deterministic per-trial random streams.

Every randomized component draws from a SplitMix64 stream.  Trial i of a
simulation derives its own stream from a 64-bit mix of (base_seed, i), so
trials are reproducible independently of execution order or worker count.
The scalar and vectorized generators below step through identical state
sequences, which lets the batch simulation engine reproduce single-trial
runs bit for bit.
"""

from __future__ import annotations

import numpy as np

_MASK = (1 << 64) - 1
_GAMMA = 0x9E3779B97F4A7C15
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB
_DERIVE = 0xD1B54A32D192ED03


def _mix(z: int) -> int:
    z &= _MASK
    z = ((z ^ (z >> 30)) * _MIX1) & _MASK
    z = ((z ^ (z >> 27)) * _MIX2) & _MASK
    return z ^ (z >> 31)


def trial_seed(base_seed: int, index: int) -> int:
    """64-bit mix of (base_seed, trial index)."""
    return _mix((_mix(base_seed) + (index + 1) * _DERIVE) & _MASK)


class TrialStream:
    """Scalar SplitMix64 stream of uniforms in [0, 1)."""

    def __init__(self, seed: int):
        self._state = seed & _MASK

    def next_u64(self) -> int:
        self._state = (self._state + _GAMMA) & _MASK
        return _mix(self._state)

    def uniform(self) -> float:
        # top 53 bits -> [0, 1)
        return (self.next_u64() >> 11) * 2.0**-53


class VectorStreams:
    """One SplitMix64 stream per row, stepped in lockstep.

    ``VectorStreams(seeds).uniforms()`` returns the same values as calling
    ``TrialStream(s).uniform()`` once on each seed.
    """

    def __init__(self, seeds: np.ndarray):
        self._state = np.asarray(seeds, dtype=np.uint64).copy()

    def uniforms(self) -> np.ndarray:
        with np.errstate(over="ignore"):
            self._state += np.uint64(_GAMMA)
            z = self._state.copy()
            z = (z ^ (z >> np.uint64(30))) * np.uint64(_MIX1)
            z = (z ^ (z >> np.uint64(27))) * np.uint64(_MIX2)
            z ^= z >> np.uint64(31)
        return (z >> np.uint64(11)).astype(np.float64) * 2.0**-53


def trial_seeds_vector(base_seed: int, start: int, count: int) -> np.ndarray:
    """Vectorized ``trial_seed`` for indices start .. start+count-1."""
    idx = np.arange(start, start + count, dtype=np.uint64)
    with np.errstate(over="ignore"):
        base = np.uint64(_mix(base_seed))
        z = base + (idx + np.uint64(1)) * np.uint64(_DERIVE)
        z = (z ^ (z >> np.uint64(30))) * np.uint64(_MIX1)
        z = (z ^ (z >> np.uint64(27))) * np.uint64(_MIX2)
        z ^= z >> np.uint64(31)
    return z
