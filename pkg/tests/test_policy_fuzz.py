"""Randomized cross-checks of the trial engine.

The vectorized batch engine must reproduce the scalar replay bit for bit on
arbitrary instances, and every outcome must satisfy the structural
invariants of the policy (ratio in [0, 1], hires only after tau once in
secretary mode, switch time equals the first mistake arrival seen in
prediction mode).
"""

import numpy as np
import pytest

from secpred import PolicyParams, build_instance, make_cosp_schedule, make_rosp_schedule, run_trial
from secpred.core import mistake_set
from secpred.policy import run_trials_batch
from secpred.rng import TrialStream, trial_seed


def random_setup(rng):
    n = int(rng.integers(1, 8))
    values = rng.uniform(0.05, 3.0, n).tolist()
    preds = (np.asarray(values) * rng.uniform(0.0, 2.2, n)).tolist()
    inst = build_instance(values, preds)
    params = PolicyParams(
        theta=float(rng.uniform(0.05, 0.95)),
        tau=float(rng.uniform(0.05, 0.8)),
        gamma=float(rng.uniform(0.0, 1.0)),
        delta=float(rng.uniform(0.0, 1.0)),
        beta=float(rng.uniform(0.05, 0.95)),
    )
    return inst, params


@pytest.mark.parametrize("model", ["cosp", "rosp"])
def test_batch_matches_scalar_fuzz(model, trials_per_setup=64, setups=40):
    rng = np.random.default_rng(20_26 if model == "cosp" else 62_02)
    for s in range(setups):
        inst, params = random_setup(rng)
        seed = int(rng.integers(0, 2**62))
        batch = run_trials_batch(inst, model, params, seed, 0, trials_per_setup)
        for i in range(trials_per_setup):
            stream = TrialStream(trial_seed(seed, i))
            if model == "cosp":
                sched = make_cosp_schedule(inst, params.beta, stream)
            else:
                sched = make_rosp_schedule(inst, stream)
            out = run_trial(inst, sched, params, stream)
            want = out.hired_index if out.hired_index is not None else -1
            assert batch.hired[i] == want, (s, i, inst, params)
            assert batch.ratios[i] == out.ratio
            assert batch.switched[i] == (out.switch_time is not None)


def test_outcome_invariants_fuzz():
    rng = np.random.default_rng(99)
    for _ in range(300):
        inst, params = random_setup(rng)
        stream = TrialStream(int(rng.integers(0, 2**62)))
        sched = make_rosp_schedule(inst, stream)
        out = run_trial(inst, sched, params, stream)
        assert 0.0 <= out.ratio <= 1.0
        mset = mistake_set(inst, params.theta)
        times = sched.arrival_times
        if out.switch_time is not None:
            # the switch is the earliest mistake not preceded by a
            # prediction-mode hire of the top prediction
            first_mistake = min(times[i] for i in mset)
            assert out.switch_time == first_mistake
            assert out.mode_at_end == "secretary"
            if out.hired_index is not None:
                assert times[out.hired_index] > params.tau
                assert times[out.hired_index] >= out.switch_time
        else:
            assert out.mode_at_end == "prediction"
            if mset:
                # every mistake arrived after the prediction-mode hire
                assert out.hired_index == inst.top_predicted_index
                assert times[out.hired_index] < min(times[i] for i in mset)
        if out.hired_index is None:
            assert out.hired_value == 0.0 and out.ratio == 0.0