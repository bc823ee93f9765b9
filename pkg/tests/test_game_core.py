"""Tests for the two-player stage game."""

import random

import pytest

import oracles
from ranklash import (
    CostModel,
    CostTiming,
    GameParams,
    PlayerProfile,
    check_pd_ordering,
    eval_cost,
    stage_payoffs,
    stage_payoffs_asymmetric,
)


def test_known_point_constant_cost():
    params = GameParams(p=0.5, cost=CostModel.constant(0.1), beta=0.4)
    pay = stage_payoffs(params)
    assert pay.R == 0.5
    assert pay.T == pytest.approx(0.65, abs=1e-15)
    assert pay.S == pytest.approx(0.25, abs=1e-15)
    assert pay.Q == pytest.approx(0.325, abs=1e-15)


def test_zero_success_probability_only_costs_hurt():
    params = GameParams(p=0.0, cost=CostModel.constant(0.07), beta=0.9)
    pay = stage_payoffs(params)
    assert pay.T == pytest.approx(0.5 - 0.07)
    assert pay.S == 0.5
    assert pay.Q == pytest.approx(0.5 - 0.07)


def test_certain_success_degrades_mutual_attack():
    params = GameParams(p=1.0, cost=CostModel.linear(0.05), beta=0.6)
    pay = stage_payoffs(params)
    assert pay.T == pytest.approx(0.95)
    assert pay.S == 0.0
    assert pay.Q == pytest.approx(0.3 - 0.05)


def test_cost_model_shapes():
    assert eval_cost(CostModel.constant(0.2), 0.0) == 0.2
    assert eval_cost(CostModel.linear(0.2), 0.0) == 0.0
    assert eval_cost(CostModel.quadratic(0.2), 0.5) == pytest.approx(0.05)
    assert CostModel(a=0.3, k=1.5)(0.7) == pytest.approx(0.3 * 0.7**1.5)


def test_parameter_validation():
    with pytest.raises(ValueError):
        CostModel(a=-0.1)
    with pytest.raises(ValueError):
        CostModel(a=0.1, k=-1.0)
    with pytest.raises(ValueError):
        eval_cost(CostModel.constant(0.1), 1.5)
    with pytest.raises(ValueError):
        GameParams(p=-0.2, cost=CostModel.constant(0.1), beta=0.4)
    with pytest.raises(ValueError):
        GameParams(p=0.5, cost=CostModel.constant(0.1), beta=1.2)
    with pytest.raises(ValueError):
        PlayerProfile(p=0.5, cost=CostModel.constant(0.1), delta=1.0)
    with pytest.raises(ValueError):
        stage_payoffs_asymmetric(
            PlayerProfile(p=0.5, cost=CostModel.constant(0.1)),
            PlayerProfile(p=0.5, cost=CostModel.constant(0.1)),
            beta=-0.5,
        )


def test_payoffs_match_outcome_enumeration():
    rng = random.Random(7)
    for _ in range(200):
        p = rng.random()
        a = rng.random() * 0.5
        k = rng.choice([0.0, 1.0, 2.0])
        beta = rng.random()
        params = GameParams(p=p, cost=CostModel(a=a, k=k), beta=beta)
        c = params.evaluated_cost()
        pay = stage_payoffs(params)
        r, _ = oracles.expected_stage(False, False, p, p, beta, 0.0, 0.0)
        t, _ = oracles.expected_stage(True, False, p, p, beta, c, 0.0)
        s, _ = oracles.expected_stage(False, True, p, p, beta, 0.0, c)
        q, _ = oracles.expected_stage(True, True, p, p, beta, c, c)
        assert pay.R == pytest.approx(r, abs=1e-12)
        assert pay.T == pytest.approx(t, abs=1e-12)
        assert pay.S == pytest.approx(s, abs=1e-12)
        assert pay.Q == pytest.approx(q, abs=1e-12)


def test_asymmetric_reduces_to_symmetric():
    profile = PlayerProfile(p=0.6, cost=CostModel.quadratic(0.3))
    sym = stage_payoffs(GameParams(p=0.6, cost=CostModel.quadratic(0.3), beta=0.5))
    m1, m2 = stage_payoffs_asymmetric(profile, profile, beta=0.5)
    assert m1 == sym
    assert m2 == sym


def test_asymmetric_matches_outcome_enumeration():
    rng = random.Random(11)
    for _ in range(200):
        p1, p2 = rng.random(), rng.random()
        c1 = CostModel(a=rng.random() * 0.4, k=rng.choice([0.0, 1.0]))
        c2 = CostModel(a=rng.random() * 0.4, k=rng.choice([0.0, 2.0]))
        beta = rng.random()
        pl1 = PlayerProfile(p=p1, cost=c1)
        pl2 = PlayerProfile(p=p2, cost=c2)
        m1, m2 = stage_payoffs_asymmetric(pl1, pl2, beta)
        ev1 = pl1.evaluated_cost()
        ev2 = pl2.evaluated_cost()
        t1, _ = oracles.expected_stage(True, False, p1, p2, beta, ev1, 0.0)
        _, s2 = oracles.expected_stage(True, False, p1, p2, beta, ev1, 0.0)
        q1, q2 = oracles.expected_stage(True, True, p1, p2, beta, ev1, ev2)
        assert m1.T == pytest.approx(t1, abs=1e-12)
        assert m2.S == pytest.approx(s2, abs=1e-12)
        assert m1.Q == pytest.approx(q1, abs=1e-12)
        assert m2.Q == pytest.approx(q2, abs=1e-12)
        # and the mirrored lone-attack round
        t2, s1 = (
            oracles.expected_stage(True, False, p2, p1, beta, ev2, 0.0)[0],
            oracles.expected_stage(False, True, p1, p2, beta, 0.0, ev2)[0],
        )
        assert m2.T == pytest.approx(t2, abs=1e-12)
        assert m1.S == pytest.approx(s1, abs=1e-12)


def test_ordering_holds_at_moderate_cost():
    params = GameParams(p=0.5, cost=CostModel.constant(0.1), beta=0.4)
    report = check_pd_ordering(stage_payoffs(params), params)
    assert report.holds
    assert report.violated_pairs == []
    assert report.analytic_bound == pytest.approx(0.175)
    assert report.cost_below_bound
    assert report.cost_below_half_p


def test_ordering_breaks_when_cost_dominates():
    params = GameParams(p=0.5, cost=CostModel.constant(0.3), beta=0.4)
    report = check_pd_ordering(stage_payoffs(params), params)
    assert not report.holds
    assert "T>R" in report.violated_pairs
    assert "Q>S" in report.violated_pairs
    assert not report.cost_below_bound
    assert not report.cost_below_half_p


def test_ordering_equivalent_to_cost_conditions():
    rng = random.Random(23)
    for _ in range(500):
        p = 0.05 + 0.9 * rng.random()
        c = 0.001 + 0.5 * rng.random()
        beta = rng.random()
        params = GameParams(p=p, cost=CostModel.constant(c), beta=beta)
        report = check_pd_ordering(stage_payoffs(params), params)
        # with c > 0 the middle comparison R > Q always holds, so the
        # dilemma reduces to the two cost conditions
        assert "R>Q" not in report.violated_pairs
        expected = report.cost_below_bound and report.cost_below_half_p
        assert report.holds == expected
