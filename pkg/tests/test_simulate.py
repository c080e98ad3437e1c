import math

import pytest

from secpred import (
    THEOREM_COSP_PARAMS as P,
    THEOREM_ROSP_PARAMS as Q,
    build_instance,
    case_profile,
    estimate_ratio,
    gen_case_family,
    gen_overestimated_top,
    gen_underestimated_best,
    mistake_set,
)
from secpred.analytic import case_bound
from secpred.simulate import default_deviation, sim_csv_header, sim_csv_row


def test_exact_predictions_deterministic():
    inst = build_instance([3.0, 7.0, 1.0], [3.0, 7.0, 1.0])
    res = estimate_ratio(inst, "cosp", P, trials=500, seed=1)
    assert res.mean_ratio == 1.0
    assert res.std_error == 0.0
    assert res.hire_rate == 1.0
    assert res.mode_switch_rate == 0.0


def test_single_candidate_rosp():
    inst = build_instance([5.0], [5.0])
    res = estimate_ratio(inst, "rosp", Q, trials=200, seed=3)
    assert res.mean_ratio == 1.0


def test_seed_determinism_and_thread_independence():
    inst = gen_case_family(4, 2, 1, 1, 5, P.theta)
    a = estimate_ratio(inst, "cosp", P, trials=150_000, seed=11, threads=1)
    b = estimate_ratio(inst, "cosp", P, trials=150_000, seed=11, threads=3)
    assert a == b
    c = estimate_ratio(inst, "cosp", P, trials=150_000, seed=12)
    assert c.mean_ratio != a.mean_ratio


def test_gen_underestimated_best():
    inst = gen_underestimated_best(5, 0.9, 0.58)
    assert inst.epsilon == pytest.approx(0.9, abs=1e-12)
    prof = case_profile(inst, 0.58)
    assert (prof.m, prof.k, prof.m2) == (1, 1, 0)
    mset = mistake_set(inst, 0.58)
    assert inst.top_true_index in mset
    assert inst.top_predicted_index not in mset
    with pytest.raises(ValueError):
        gen_underestimated_best(5, 0.5, 0.58)


def test_gen_overestimated_top():
    inst = gen_overestimated_top(4, 0.9, 0.58)
    prof = case_profile(inst, 0.58)
    assert (prof.m, prof.k, prof.m2) == (1, 1, 0)
    mset = mistake_set(inst, 0.58)
    assert inst.top_predicted_index in mset
    assert inst.top_true_index not in mset


@pytest.mark.parametrize(
    "cid,m,k,m2,n",
    [
        (1, 1, 0, 0, 3),
        (1, 3, 0, 2, 6),
        (2, 2, 0, 2, 5),
        (3, 2, 1, 0, 5),
        (3, 4, 2, 1, 9),
        (4, 1, 1, 0, 4),
        (4, 2, 1, 1, 5),
        (4, 3, 4, 1, 9),
        (5, 1, 1, 0, 4),
        (5, 2, 1, 1, 5),
        (5, 3, 3, 1, 8),
        (6, 1, 1, 1, 4),
        (6, 2, 3, 1, 7),
        (6, 3, 2, 2, 7),
    ],
)
def test_case_family_round_trip(cid, m, k, m2, n):
    inst = gen_case_family(cid, m, k, m2, n, 0.58)
    prof = case_profile(inst, 0.58)
    assert (prof.m, prof.k, prof.m2) == (m, k, m2)
    assert inst.top_true_value == pytest.approx(1.0, abs=1e-9)


def test_case_family_infeasible_requests():
    with pytest.raises(ValueError):
        gen_case_family(1, 1, 1, 0, 4, 0.58)  # case 1 needs k = 0
    with pytest.raises(ValueError):
        gen_case_family(6, 0, 0, 0, 3, 0.58)  # empty mistake set is case 0
    with pytest.raises(ValueError):
        gen_case_family(4, 3, 1, 0, 6, 0.58)  # too many mistakes above
    with pytest.raises(ValueError):
        gen_case_family(4, 2, 1, 1, 3, 0.58)  # n < m + k + 1


def test_one_sided_bounds_small_run():
    # quick version of the acceptance check: 1e5 trials, 3 sigma one-sided
    for model, params in (("cosp", P), ("rosp", Q)):
        for cid, prof in ((1, (1, 0, 0)), (4, (2, 1, 1)), (5, (2, 1, 1)), (6, (1, 1, 1))):
            inst = gen_case_family(cid, *prof, 5, params.theta)
            res = estimate_ratio(inst, model, params, trials=100_000, seed=5)
            bound = case_bound(model, cid, *prof, params)
            assert 0.0 <= res.mean_ratio <= 1.0
            assert res.mean_ratio >= bound - 3 * res.std_error, (model, cid)


def test_case1_two_mistake_family_matches_formula():
    # chosen order, both the top candidate and one lesser candidate deviate:
    # the case-1 value at m = 2 is 0.2674 at the published parameters
    bound = case_bound("cosp", 1, 2, 0, 1, P)
    assert bound == pytest.approx(0.2674, abs=1e-10)
    inst = gen_case_family(1, 2, 0, 1, 5, P.theta)
    res = estimate_ratio(inst, "cosp", P, trials=200_000, seed=17)
    assert res.mean_ratio >= bound - 3 * res.std_error


def test_switch_rate_matches_prediction_mode_mass():
    inst = gen_case_family(6, 2, 2, 1, 6, P.theta)
    trials = 200_000
    res = estimate_ratio(inst, "cosp", P, trials=trials, seed=9)
    want = 1.0 - (1.0 - P.beta) ** 2
    sigma = math.sqrt(want * (1 - want) / trials)
    assert abs(res.mode_switch_rate - want) <= 3 * sigma


def test_consistency_sweep_zero_mistakes():
    # epsilon stepped below theta: prediction mode always hires the top
    # prediction, so the ratio is deterministic and meets (1-e)/(1+e)
    for eps in [0.0, 0.1, 0.2, 0.3, 0.4, 0.5]:
        floor = (1 - eps) / (1 + eps)
        if eps == 0.0:
            values, preds = [1.0, 0.995], [1.0, 0.995]
            expect = 1.0
        else:
            qv = min(1.0 - 1e-6, floor + 0.005)
            values = [1.0, qv]
            preds = [(1 - eps) * 1.0, (1 + eps) * qv]
            expect = qv
        inst = build_instance(values, preds)
        assert inst.epsilon == pytest.approx(eps, abs=1e-12)
        res = estimate_ratio(inst, "cosp", P, trials=20_000, seed=2)
        assert res.hire_rate == 1.0
        assert res.mode_switch_rate == 0.0
        assert res.std_error <= 1e-9
        assert res.mean_ratio == pytest.approx(expect, abs=1e-9)
        assert res.mean_ratio >= floor - 1e-12


def test_csv_row():
    inst = gen_case_family(4, 2, 1, 1, 5, P.theta)
    res = estimate_ratio(inst, "cosp", P, trials=1000, seed=0)
    header = sim_csv_header()
    row = sim_csv_row("cosp", inst, P.theta, res, 0)
    assert header.split(",") == [
        "model", "n", "m", "k", "m2", "trials", "seed",
        "mean_ratio", "std_error", "hire_rate", "switch_rate",
    ]
    parts = row.split(",")
    assert parts[0] == "cosp"
    assert parts[1:6] == ["5", "2", "1", "1", "1000"]


def test_default_deviation():
    assert default_deviation(0.3) == 0.6
    assert default_deviation(0.58) == pytest.approx(0.99)
