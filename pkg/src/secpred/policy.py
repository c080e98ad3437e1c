"""Execution of the prediction-aware hiring policy over a schedule.

The policy starts in prediction mode, planning to hire the top-predicted
candidate on arrival.  The first candidate whose value deviates from its
prediction by more than theta flips the run into secretary mode: skip
everything up to time tau, then consider each candidate that beats all
earlier arrivals.  The top-predicted candidate is only hired
probabilistically in secretary mode (gamma if it triggered the switch,
delta otherwise); anyone else is hired outright.

``run_trial`` replays one schedule step by step.  ``run_trials_batch`` is a
vectorized engine that reproduces ``run_trial`` bit for bit across many
trials (same per-trial streams, same draws) and is what the simulation
module uses.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import COSP, ROSP, Instance, PolicyParams, Schedule
from .rng import TrialStream, VectorStreams, trial_seeds_vector

__all__ = [
    "TrialOutcome",
    "make_cosp_schedule",
    "make_rosp_schedule",
    "run_trial",
    "run_trials_batch",
    "BatchResult",
]

PREDICTION = "prediction"
SECRETARY = "secretary"


@dataclass(frozen=True)
class TrialOutcome:
    hired_index: int | None
    hired_value: float
    ratio: float
    switch_time: float | None
    mode_at_end: str


def _draw_times(instance: Instance, stream: TrialStream, fixed: tuple[int, float] | None):
    """Draw arrival times, redrawing whole vectors on (measure-zero) collisions."""
    n = instance.n
    while True:
        times = [0.0] * n
        for i in range(n):
            if fixed is not None and i == fixed[0]:
                times[i] = fixed[1]
            else:
                times[i] = stream.uniform()
        if len(set(times)) == n:
            return times


def make_cosp_schedule(instance: Instance, beta: float, stream: TrialStream) -> Schedule:
    """Chosen-order schedule: the top prediction arrives exactly at beta,
    everyone else independently uniform on [0, 1]."""
    if not 0.0 < beta < 1.0:
        raise ValueError(f"beta={beta} outside (0, 1)")
    times = _draw_times(instance, stream, (instance.top_predicted_index, beta))
    return Schedule(tuple(times))


def make_rosp_schedule(instance: Instance, stream: TrialStream) -> Schedule:
    """Random-order schedule: all arrivals independently uniform on [0, 1]."""
    times = _draw_times(instance, stream, None)
    return Schedule(tuple(times))


def run_trial(
    instance: Instance,
    schedule: Schedule,
    params: PolicyParams,
    stream: TrialStream,
) -> TrialOutcome:
    """Replay the policy once over the given schedule.

    Each probabilistic hire decision consumes exactly one uniform from the
    stream, in arrival order.
    """
    times = schedule.arrival_times
    if len(times) != instance.n:
        raise ValueError(f"schedule length {len(times)} != instance size {instance.n}")

    theta, tau = params.theta, params.tau
    gamma, delta = params.gamma, params.delta
    ihat = instance.top_predicted_index
    vstar = instance.top_true_value

    order = sorted(range(instance.n), key=lambda i: times[i])
    mode = PREDICTION
    switch_time: float | None = None
    best_seen = -float("inf")
    hired: int | None = None

    for i in order:
        c = instance.candidates[i]
        t = times[i]
        if mode == PREDICTION and abs(1.0 - c.predicted_value / c.true_value) > theta:
            mode = SECRETARY
            switch_time = t
        if mode == PREDICTION and i == ihat:
            hired = i
            break
        if mode == SECRETARY and t > tau and c.true_value > best_seen:
            if i == ihat:
                p = gamma if t == switch_time else delta
                if stream.uniform() < p:
                    hired = i
                    break
            else:
                hired = i
                break
        best_seen = max(best_seen, c.true_value)

    hired_value = instance.candidates[hired].true_value if hired is not None else 0.0
    return TrialOutcome(
        hired_index=hired,
        hired_value=hired_value,
        ratio=hired_value / vstar,
        switch_time=switch_time,
        mode_at_end=mode,
    )


# ---------------------------------------------------------------------------
# vectorized batch engine
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class BatchResult:
    hired: np.ndarray        # candidate index or -1
    ratios: np.ndarray
    switched: np.ndarray     # bool: left prediction mode


def _batch_times(instance, model, beta, streams, count):
    n = instance.n
    ihat = instance.top_predicted_index
    cols = []
    for j in range(n):
        if model == COSP and j == ihat:
            continue
        cols.append(streams.uniforms())
    times = np.empty((count, n))
    ci = 0
    for j in range(n):
        if model == COSP and j == ihat:
            times[:, j] = beta
        else:
            times[:, j] = cols[ci]
            ci += 1
    # whole-row redraw on collisions, mirroring the scalar loop
    while True:
        bad = np.zeros(count, dtype=bool)
        srt = np.sort(times, axis=1)
        bad |= (np.diff(srt, axis=1) == 0.0).any(axis=1)
        if not bad.any():
            return times
        idx = np.nonzero(bad)[0]
        sub = VectorStreams(streams._state[idx])
        for j in range(n):
            if model == COSP and j == ihat:
                continue
            times[idx, j] = sub.uniforms()
        streams._state[idx] = sub._state


def run_trials_batch(
    instance: Instance,
    model: str,
    params: PolicyParams,
    base_seed: int,
    start: int,
    count: int,
) -> BatchResult:
    """Run trials [start, start+count) with per-trial derived streams.

    Matches ``make_*_schedule`` + ``run_trial`` driven by
    ``TrialStream(trial_seed(base_seed, i))`` exactly.
    """
    if model not in (COSP, ROSP):
        raise ValueError(f"unknown model {model!r}")
    beta = params.require_beta() if model == COSP else None

    n = instance.n
    v = np.asarray(instance.values)
    p = np.asarray(instance.predictions)
    dev = np.abs(1.0 - p / v)
    mistake = dev > params.theta
    ihat = instance.top_predicted_index
    vstar = instance.top_true_value

    streams = VectorStreams(trial_seeds_vector(base_seed, start, count))
    times = _batch_times(instance, model, beta, streams, count)
    u_hire = streams.uniforms()

    if mistake.any():
        t_switch = times[:, mistake].min(axis=1)
    else:
        t_switch = np.full(count, np.inf)
    t_ihat = times[:, ihat]
    pred_hire = t_ihat < t_switch

    # best-so-far flags per candidate via arrival-order prefix maxima
    order = np.argsort(times, axis=1)
    rows = np.arange(count)[:, None]
    v_by_arrival = np.broadcast_to(v, (count, n))[rows, order]
    prefix = np.maximum.accumulate(v_by_arrival, axis=1)
    bsf_sorted = np.empty((count, n), dtype=bool)
    bsf_sorted[:, 0] = True
    bsf_sorted[:, 1:] = v_by_arrival[:, 1:] > prefix[:, :-1]
    bsf = np.empty((count, n), dtype=bool)
    bsf[rows, order] = bsf_sorted

    eligible = bsf & (times > params.tau) & (times >= t_switch[:, None])
    elig_times = np.where(eligible, times, np.inf)
    first = np.argmin(elig_times, axis=1)
    first_t = elig_times[rows[:, 0], first]
    has_first = np.isfinite(first_t)

    hired = np.full(count, -1, dtype=np.int64)
    hired[pred_hire] = ihat

    sec = ~pred_hire
    first_is_ihat = sec & has_first & (first == ihat)
    first_other = sec & has_first & (first != ihat)
    hired[first_other] = first[first_other]

    p_gate = np.where(t_ihat == t_switch, params.gamma, params.delta)
    accept = first_is_ihat & (u_hire < p_gate)
    hired[accept] = ihat

    fall = first_is_ihat & ~(u_hire < p_gate)
    if fall.any():
        elig2 = elig_times.copy()
        elig2[rows[:, 0], first] = np.inf
        second = np.argmin(elig2, axis=1)
        has_second = np.isfinite(elig2[rows[:, 0], second])
        take = fall & has_second
        hired[take] = second[take]

    ratios = np.where(hired >= 0, v[np.clip(hired, 0, None)] / vstar, 0.0)
    switched = np.isfinite(t_switch) & ~pred_hire
    return BatchResult(hired=hired, ratios=ratios, switched=switched)
