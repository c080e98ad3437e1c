"""Domain types: instances, predictions, policy parameters, schedules.

An instance is a fixed list of candidates, each with a true value and a
prediction known up front.  Derived quantities follow the usual notation
for this problem: the maximum multiplicative prediction error, the
top-predicted candidate, the true best candidate, and the adversarial
structure counts (mistake count, candidates above the top prediction,
mistakes below it).
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Sequence

__all__ = [
    "Candidate",
    "Instance",
    "PolicyParams",
    "CaseProfile",
    "Schedule",
    "build_instance",
    "mistake_set",
    "case_profile",
    "load_instance",
    "dump_instance",
    "COSP",
    "ROSP",
]

COSP = "cosp"
ROSP = "rosp"

# Relative tie-breaking offset.  Duplicate values get v * (1 + rank * PERTURB_ETA)
# in input order, keeping every ratio within ~1e-11 of the original.
PERTURB_ETA = 1e-12


@dataclass(frozen=True)
class Candidate:
    true_value: float
    predicted_value: float


@dataclass(frozen=True)
class Instance:
    candidates: tuple[Candidate, ...]
    epsilon: float
    top_predicted_index: int
    top_true_index: int
    top_true_value: float

    @property
    def n(self) -> int:
        return len(self.candidates)

    @property
    def values(self) -> tuple[float, ...]:
        return tuple(c.true_value for c in self.candidates)

    @property
    def predictions(self) -> tuple[float, ...]:
        return tuple(c.predicted_value for c in self.candidates)


@dataclass(frozen=True)
class PolicyParams:
    """Algorithm parameters (theta, tau, beta, gamma, delta).

    beta is the fixed arrival time of the top-predicted candidate and is
    only meaningful for chosen-order schedules; random-order runs ignore it.
    """

    theta: float
    tau: float
    gamma: float
    delta: float
    beta: float | None = None

    def __post_init__(self):
        for name in ("theta", "tau", "gamma", "delta"):
            x = getattr(self, name)
            if not 0.0 <= x <= 1.0:
                raise ValueError(f"{name}={x} outside [0, 1]")
        if self.beta is not None and not 0.0 < self.beta < 1.0:
            raise ValueError(f"beta={self.beta} outside (0, 1)")

    def require_beta(self) -> float:
        if self.beta is None:
            raise ValueError("chosen-order operation requires beta")
        return self.beta


@dataclass(frozen=True)
class CaseProfile:
    """Adversarial structure: m mistakes, k candidates above the top
    prediction, m2 mistakes strictly below it."""

    m: int
    k: int
    m2: int

    def __post_init__(self):
        if min(self.m, self.k, self.m2) < 0:
            raise ValueError("profile counts must be nonnegative")
        # A mistake is either below the top-predicted value (m2 of them),
        # above it (at most k), or the top-predicted candidate itself.
        if not max(0, self.m - self.k - 1) <= self.m2 <= self.m:
            raise ValueError(f"inadmissible profile {(self.m, self.k, self.m2)}")


@dataclass(frozen=True)
class Schedule:
    arrival_times: tuple[float, ...]

    def __post_init__(self):
        ts = self.arrival_times
        if any(not 0.0 <= t <= 1.0 for t in ts):
            raise ValueError("arrival times must lie in [0, 1]")
        if len(set(ts)) != len(ts):
            raise ValueError("arrival times must be pairwise distinct")


def _perturb(xs: Sequence[float]) -> list[float]:
    seen: dict[float, int] = {}
    out = []
    for x in xs:
        rank = seen.get(x, 0)
        seen[x] = rank + 1
        out.append(x * (1.0 + PERTURB_ETA * rank) if rank else x)
    return out


def build_instance(values: Sequence[float], predictions: Sequence[float]) -> Instance:
    """Build an instance, perturbing duplicates and deriving epsilon, i-hat, i-star."""
    if len(values) == 0:
        raise ValueError("empty instance")
    if len(values) != len(predictions):
        raise ValueError(f"length mismatch: {len(values)} values, {len(predictions)} predictions")
    if any(v < 0 for v in values) or any(p < 0 for p in predictions):
        raise ValueError("values and predictions must be nonnegative")
    if any(v == 0 for v in values):
        raise ValueError("true values must be strictly positive (epsilon undefined at 0)")

    vs = _perturb(values)
    ps = _perturb(predictions)
    eps = max(abs(1.0 - p / v) for v, p in zip(vs, ps))
    ihat = max(range(len(ps)), key=lambda i: ps[i])
    istar = max(range(len(vs)), key=lambda i: vs[i])
    cands = tuple(Candidate(v, p) for v, p in zip(vs, ps))
    return Instance(cands, eps, ihat, istar, vs[istar])


def mistake_set(instance: Instance, theta: float) -> set[int]:
    """Indices whose prediction deviates from the value by strictly more than theta."""
    if not 0.0 <= theta <= 1.0:
        raise ValueError(f"theta={theta} outside [0, 1]")
    return {
        i
        for i, c in enumerate(instance.candidates)
        if abs(1.0 - c.predicted_value / c.true_value) > theta
    }


def case_profile(instance: Instance, theta: float) -> CaseProfile:
    """Structure counts (m, k, m2) of the instance at threshold theta."""
    mset = mistake_set(instance, theta)
    v_hat = instance.candidates[instance.top_predicted_index].true_value
    k = sum(1 for c in instance.candidates if c.true_value > v_hat)
    m2 = sum(1 for i in mset if instance.candidates[i].true_value < v_hat)
    return CaseProfile(m=len(mset), k=k, m2=m2)


def dump_instance(instance: Instance, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(
            {"values": list(instance.values), "predictions": list(instance.predictions)},
            fh,
        )
        fh.write("\n")


def load_instance(path: str) -> Instance:
    with open(path, "r", encoding="utf-8") as fh:
        obj = json.load(fh)
    if not isinstance(obj, dict) or "values" not in obj or "predictions" not in obj:
        raise ValueError(f"{path}: expected an object with 'values' and 'predictions'")
    return build_instance(obj["values"], obj["predictions"])
