"""Deterministic simulation of the randomized policy.

Under random-order arrivals the first arrival time is itself a perfect
randomness source: if t1 is the minimum of n i.i.d. uniforms, then
U = 1 - (1 - t1)^n is uniform on [0, 1] by the probability integral
transform, and its binary expansion supplies unbiased bits.  The
derandomized trial replays the policy with every probabilistic hire
decision driven by bits extracted from U instead of an external stream.
"""

from __future__ import annotations

import hashlib
import math

from .core import Instance, PolicyParams, Schedule
from .policy import TrialOutcome, run_trial

__all__ = [
    "uniform_from_first_arrival",
    "bits_from_uniform",
    "derandomized_trial",
]

MANTISSA_BITS = 52     # native float mantissa: bits extractable from U directly
BITS_PER_DECISION = 32


def uniform_from_first_arrival(t1: float, n: int) -> float:
    """CDF of the minimum of n uniforms evaluated at t1: 1 - (1 - t1)^n."""
    if not 0.0 <= t1 <= 1.0:
        raise ValueError(f"t1={t1} outside [0, 1]")
    if n < 1:
        raise ValueError(f"n={n} must be >= 1")
    return 1.0 - (1.0 - t1) ** n


def bits_from_uniform(u: float, count: int) -> list[int]:
    """First ``count`` bits of the binary expansion of u in [0, 1)."""
    if not 0.0 <= u < 1.0:
        raise ValueError(f"u={u} outside [0, 1)")
    if count < 1:
        raise ValueError("count must be >= 1")
    bits = []
    x = u
    for _ in range(count):
        x *= 2.0
        bit = int(x >= 1.0)
        bits.append(bit)
        x -= bit
    return bits


class _BitSource:
    """52 mantissa bits of U, then a SHA-256 keystream keyed by U.

    The theoretical construction assumes an infinite binary expansion; a
    double only carries 52 meaningful bits, so decisions past that budget
    fall back to a deterministic keystream derived from U.
    """

    def __init__(self, u: float):
        u = min(u, 1.0 - 2.0**-53)  # U = 1.0 only at the measure-zero t1 = 1
        self._pool = bits_from_uniform(u, MANTISSA_BITS) if u > 0.0 else [0] * MANTISSA_BITS
        self._key = math.floor(u * 2.0**MANTISSA_BITS).to_bytes(8, "big")
        self._counter = 0

    def _refill(self) -> None:
        block = hashlib.sha256(self._key + self._counter.to_bytes(8, "big")).digest()
        self._counter += 1
        for byte in block:
            for shift in range(7, -1, -1):
                self._pool.append((byte >> shift) & 1)

    def take_uniform(self) -> float:
        while len(self._pool) < BITS_PER_DECISION:
            self._refill()
        chunk, self._pool = self._pool[:BITS_PER_DECISION], self._pool[BITS_PER_DECISION:]
        acc = 0
        for b in chunk:
            acc = (acc << 1) | b
        return acc / float(1 << BITS_PER_DECISION)

    # duck-types policy's stream: run_trial only calls uniform()
    uniform = take_uniform


def derandomized_trial(
    instance: Instance, schedule: Schedule, params: PolicyParams
) -> TrialOutcome:
    """Replay the policy with hire decisions extracted from the first arrival.

    Fully deterministic given (instance, schedule, params).
    """
    if len(schedule.arrival_times) < 1:
        raise ValueError("schedule must contain at least one arrival")
    t1 = min(schedule.arrival_times)
    u = uniform_from_first_arrival(t1, instance.n)
    return run_trial(instance, schedule, params, _BitSource(u))
