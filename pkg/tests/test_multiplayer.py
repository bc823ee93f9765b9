"""Tests for the N-provider contest payoffs, thresholds, and trends."""

import math
import random

import numpy as np
import pytest

import oracles
from ranklash import (
    CostModel,
    GameParams,
    MultiParams,
    Regime,
    ShareMode,
    Strategy,
    delta_star_grim,
    delta_star_tft,
    mode_discrepancy,
    multi_delta_star,
    multi_stage_payoffs,
    multi_trend,
    stage_payoffs,
)


def make(n, m, p=0.5, c=0.1, beta=0.4, mode=ShareMode.AS_WRITTEN):
    return MultiParams(n=n, m=m, p=p, cost=CostModel.constant(c), beta=beta, mode=mode)


class TestStagePayoffs:
    def test_known_point_three_providers(self):
        pay = multi_stage_payoffs(make(3, 2))
        assert pay.R == pytest.approx(1.0 / 3.0, abs=1e-12)
        assert pay.T == pytest.approx(0.60833333333333, abs=1e-10)
        assert pay.S == pytest.approx(0.08333333333333, abs=1e-10)
        assert pay.Q == pytest.approx(0.52083333333333, abs=1e-10)

    def test_matches_exhaustive_enumeration(self):
        rng = random.Random(41)
        for _ in range(60):
            n = rng.randint(2, 12)
            m = rng.randint(1, n - 1)
            p = rng.random()
            c = rng.random() * 0.3
            beta = rng.random()
            for mode in ShareMode:
                pay = multi_stage_payoffs(make(n, m, p, c, beta, mode))
                r, t, s, q = oracles.enumerate_multi_payoffs(
                    n, m, p, beta, c, per_player=(mode is ShareMode.PER_PLAYER)
                )
                assert pay.R == pytest.approx(r, abs=1e-12)
                assert pay.T == pytest.approx(t, abs=1e-12)
                assert pay.S == pytest.approx(s, abs=1e-12)
                assert pay.Q == pytest.approx(q, abs=1e-12)

    def test_per_player_closed_forms_scale_to_huge_counts(self):
        # focal-attacker expectation collapses to (1 - (1-p)^M) / M and
        # the all-attack round to (1 - p^N (1 - beta)) / N
        for n, m, p in ((2000, 1500, 0.3), (20000, 15000, 0.001), (50, 49, 0.9)):
            pay = multi_stage_payoffs(make(n, m, p=p, mode=ShareMode.PER_PLAYER))
            t_closed = (1.0 - (1.0 - p) ** m) / m + (1.0 - p) ** m / n - 0.1
            q_closed = (1.0 - p**n * (1.0 - 0.4)) / n - 0.1
            assert pay.T == pytest.approx(t_closed, abs=1e-12)
            assert pay.Q == pytest.approx(q_closed, abs=1e-12)

    def test_market_mass_is_conserved_per_player(self):
        for n, m, p in ((7, 3, 0.45), (200, 157, 0.2), (500, 499, 0.8)):
            pay = multi_stage_payoffs(make(n, m, p=p, c=0.0, mode=ShareMode.PER_PLAYER))
            attack_round_total = m * pay.T + (n - m) * pay.S
            assert attack_round_total == pytest.approx(1.0, abs=1e-10)
            all_attack_total = n * pay.Q
            assert all_attack_total == pytest.approx(1.0 - p**n * 0.6, abs=1e-10)

    def test_per_player_mean_matches_monte_carlo(self):
        rng = np.random.default_rng(1234)
        n, m, p, beta = 6, 4, 0.3, 0.4
        pay = multi_stage_payoffs(make(n, m, p=p, c=0.0, mode=ShareMode.PER_PLAYER))
        draws = 400_000
        # lone-coalition round, focal attacker
        focal = rng.random(draws) < p
        others = rng.binomial(m - 1, p, size=draws)
        total = focal + others
        share = np.where(
            total == 0, 1.0 / n, np.where(focal, 1.0 / np.maximum(total, 1), 0.0)
        )
        se = share.std(ddof=1) / math.sqrt(draws)
        assert abs(share.mean() - pay.T) < 4 * se + 1e-4
        # all-attack round
        focal = rng.random(draws) < p
        others = rng.binomial(n - 1, p, size=draws)
        total = focal + others
        share = np.where(
            total == 0,
            1.0 / n,
            np.where(
                total == n, beta / n, np.where(focal, 1.0 / np.maximum(total, 1), 0.0)
            ),
        )
        se = share.std(ddof=1) / math.sqrt(draws)
        assert abs(share.mean() - pay.Q) < 4 * se + 1e-4

    def test_validation(self):
        with pytest.raises(ValueError):
            make(1, 1)
        with pytest.raises(ValueError):
            make(3, 3)
        with pytest.raises(ValueError):
            make(3, 0)
        with pytest.raises(ValueError):
            make(3, 2, p=1.5)
        with pytest.raises(ValueError):
            make(3, 2, beta=-0.1)


class TestPairReduction:
    def test_per_player_two_providers_equal_pair_game(self):
        rng = random.Random(43)
        for _ in range(100):
            p = rng.random()
            c = rng.random() * 0.4
            beta = rng.random()
            multi = multi_stage_payoffs(make(2, 1, p, c, beta, ShareMode.PER_PLAYER))
            pair = stage_payoffs(GameParams(p=p, cost=CostModel.constant(c), beta=beta))
            assert multi.R == pytest.approx(pair.R, abs=1e-12)
            assert multi.T == pytest.approx(pair.T, abs=1e-12)
            assert multi.S == pytest.approx(pair.S, abs=1e-12)
            assert multi.Q == pytest.approx(pair.Q, abs=1e-12)

    def test_per_player_thresholds_reduce_to_pair_formulas(self):
        rng = random.Random(47)
        for _ in range(100):
            p = 0.05 + 0.9 * rng.random()
            c = rng.random() * 0.4 * p
            beta = rng.random()
            params = make(2, 1, p, c, beta, ShareMode.PER_PLAYER)
            pair = GameParams(p=p, cost=CostModel.constant(c), beta=beta)
            grim = multi_delta_star(params, Strategy.GRIM).delta_star
            tft = multi_delta_star(params, Strategy.TIT_FOR_TAT).delta_star
            assert grim == pytest.approx(delta_star_grim(pair).delta_star, abs=1e-12)
            assert tft == pytest.approx(delta_star_tft(pair).delta_star, abs=1e-12)

    def test_aggregate_convention_disagrees_at_two_providers(self):
        report = mode_discrepancy(make(2, 1))
        assert report.as_written.Q == pytest.approx(0.575, abs=1e-12)
        assert report.per_player.Q == pytest.approx(0.325, abs=1e-12)
        assert report.t_gap == pytest.approx(0.0, abs=1e-12)
        assert report.q_gap == pytest.approx(0.25, abs=1e-12)
        assert report.significant


class TestThresholds:
    def test_known_never_cooperate_point(self):
        grim = multi_delta_star(make(3, 2), Strategy.GRIM)
        assert grim.delta_star == pytest.approx(22.0 / 7.0, abs=1e-10)
        assert grim.regime is Regime.NEVER_COOPERATE
        tft = multi_delta_star(make(3, 2), Strategy.TIT_FOR_TAT)
        assert tft.delta_star == pytest.approx(1.1, abs=1e-10)
        assert tft.regime is Regime.NEVER_COOPERATE

    def test_interior_point_exists(self):
        report = multi_delta_star(make(3, 2, p=0.9, c=0.05), Strategy.GRIM)
        assert report.regime is Regime.INTERIOR

    def test_ratio_definitions(self):
        params = make(5, 3, p=0.7, c=0.08, beta=0.6)
        pay = multi_stage_payoffs(params)
        grim = multi_delta_star(params, Strategy.GRIM).delta_star
        tft = multi_delta_star(params, Strategy.TIT_FOR_TAT).delta_star
        assert grim == pytest.approx((pay.T - pay.R) / (pay.T - pay.Q), abs=1e-12)
        assert tft == pytest.approx((pay.T - pay.R) / (pay.R - pay.S), abs=1e-12)


class TestTrend:
    def test_reports_every_coalition_size(self):
        report = multi_trend(6, 0.5, CostModel.constant(0.1), 0.4)
        assert [m for m, _ in report.points] == [1, 2, 3, 4, 5]

    def test_per_player_tail_decreases(self):
        for p in (0.3, 0.8):
            report = multi_trend(
                20, p, CostModel.constant(0.1), 0.4, mode=ShareMode.PER_PLAYER
            )
            assert report.tail_monotone_decreasing

    def test_aggregate_tail_can_break_at_low_success_rates(self):
        report = multi_trend(20, 0.3, CostModel.constant(0.1), 0.4)
        assert not report.tail_monotone_decreasing

    def test_aggregate_tail_holds_at_moderate_success_rates(self):
        for strategy in Strategy:
            report = multi_trend(
                50, 0.5, CostModel.constant(0.1), 0.4, strategy=strategy
            )
            assert report.tail_monotone_decreasing

    def test_aggregate_large_coalition_approximation(self):
        n, p, c = 50, 0.5, 0.1
        report = multi_trend(n, p, CostModel.constant(c), 0.4, Strategy.TIT_FOR_TAT)
        m, value = report.points[-1]
        assert m == n - 1
        approx = n / (m * p) - c * n - 1.0
        assert value == pytest.approx(approx, abs=0.1)

    def test_needs_three_providers(self):
        with pytest.raises(ValueError):
            multi_trend(2, 0.5, CostModel.constant(0.1), 0.4)
