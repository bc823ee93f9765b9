"""Critical discount factors above which cooperation is self-enforcing.

Each threshold compares the discounted value of permanent cooperation
against the best deviation when the opponent plays a given trigger
strategy.  Thresholds at or below 0 mean cooperation needs no patience
at all; thresholds at or above 1 mean no feasible patience sustains it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from enum import Enum

from .game_core import CostTiming, GameParams, PlayerProfile

__all__ = [
    "AsymmetricThresholds",
    "CostThreshold",
    "KRoundsReport",
    "OptimalK",
    "ProbeResult",
    "ProbeVariable",
    "Regime",
    "Strategy",
    "ThresholdReport",
    "classify_regime",
    "cost_threshold_grim",
    "delta_star_grim",
    "delta_star_one_time",
    "delta_star_tft",
    "monotonicity_probe",
    "thresholds_asymmetric",
    "tft_k_classify",
]


class Regime(Enum):
    """Where a threshold lands relative to the feasible range [0, 1)."""

    ALWAYS_COOPERATE = "always-cooperate"
    INTERIOR = "interior"
    NEVER_COOPERATE = "never-cooperate"


class Strategy(Enum):
    """Punishment strategy backing a cooperation threshold."""

    GRIM = "grim"
    TIT_FOR_TAT = "tft"


def classify_regime(delta_star: float) -> Regime:
    if delta_star <= 0.0:
        return Regime.ALWAYS_COOPERATE
    if delta_star >= 1.0:
        return Regime.NEVER_COOPERATE
    return Regime.INTERIOR


@dataclass(frozen=True)
class ThresholdReport:
    delta_star: float
    regime: Regime
    binding_player: int | None = None
    note: str | None = None


def _ratio_report(num: float, den: float, note: str | None = None) -> ThresholdReport:
    """Threshold for a condition of the form ``delta * den >= num``.

    den == 0 leaves the condition independent of delta, so the regime is
    decided by the numerator's sign and the threshold degenerates to
    +/-inf (0.0 when the condition holds with equality).
    """
    if den > 0.0:
        value = num / den
    elif num > 0.0:
        value = math.inf
    elif num == 0.0:
        value = 0.0
    else:
        value = -math.inf
    return ThresholdReport(delta_star=value, regime=classify_regime(value), note=note)


def delta_star_grim(params: GameParams) -> ThresholdReport:
    """Minimum patience for cooperation against a grim trigger.

    Closed form (p - 2c) / (p - beta*p**2 + p**2) with c the evaluated
    recurring cost.
    """
    if params.cost_timing is CostTiming.ONE_TIME_FIXED:
        raise ValueError(
            "delta_star_grim assumes a recurring cost; "
            "use delta_star_one_time for one-time costs"
        )
    p = params.p
    c = params.evaluated_cost()
    num = p - 2.0 * c
    den = p - params.beta * p * p + p * p
    return _ratio_report(num, den)


@dataclass(frozen=True)
class CostThreshold:
    """Smallest cost that makes cooperation hold at a given patience.

    ``raw`` may be negative when even a free attack is unprofitable; the
    usable ``min_cost`` is clamped at 0 and ``clamped`` records that.
    """

    min_cost: float
    clamped: bool
    raw: float


def cost_threshold_grim(p: float, beta: float, delta: float) -> CostThreshold:
    """Cost level at which grim-backed cooperation becomes self-enforcing.

    Inverts the grim threshold: cooperation holds at patience ``delta``
    exactly when c >= (p - delta * (p - beta*p**2 + p**2)) / 2.
    """
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"success probability p must be in [0, 1], got {p}")
    if not 0.0 <= beta <= 1.0:
        raise ValueError(f"degradation factor beta must be in [0, 1], got {beta}")
    if not 0.0 <= delta < 1.0:
        raise ValueError(f"discount factor delta must be in [0, 1), got {delta}")
    raw = (p - delta * (p - beta * p * p + p * p)) * 0.5
    clamped = raw < 0.0
    return CostThreshold(min_cost=max(raw, 0.0), clamped=clamped, raw=raw)


_TFT_NOTE = "threshold does not depend on the degradation factor beta"


def delta_star_tft(params: GameParams) -> ThresholdReport:
    """Minimum patience for cooperation against a single tit-for-tat reprisal.

    Closed form 1 - 2c/p.  The same threshold covers the alternating
    retaliation path.  The deviation attacks exactly once, so the value
    is the same under recurring and one-time cost timing.
    """
    p = params.p
    c = params.evaluated_cost()
    return _ratio_report(p - 2.0 * c, p, note=_TFT_NOTE)


class OptimalK(Enum):
    """Best defection length against a k-round tit-for-tat punisher."""

    ONE = "one"
    INFINITE = "infinite"


@dataclass(frozen=True)
class KRoundsReport:
    """Dichotomy for defection length against k-round tit-for-tat.

    When patience reaches ``threshold`` a single-round defection is the
    best deviation; below it the deviation value increases with every
    extra round of defection, so only the infinite path matters.
    """

    threshold: float
    optimal_k: OptimalK


def tft_k_classify(params: GameParams, delta: float) -> KRoundsReport:
    """Classify the optimal defection length against k-round tit-for-tat.

    The pivot is (Q - S) / (R - S) = p*beta + (1 - p) - 2c/p.
    """
    if params.p == 0.0:
        raise ValueError("tft_k_classify requires p > 0")
    if not 0.0 <= delta < 1.0:
        raise ValueError(f"discount factor delta must be in [0, 1), got {delta}")
    p = params.p
    c = params.evaluated_cost()
    threshold = p * params.beta + (1.0 - p) - 2.0 * c / p
    optimal = OptimalK.ONE if delta >= threshold else OptimalK.INFINITE
    return KRoundsReport(threshold=threshold, optimal_k=optimal)


_ONE_TIME_NOTE = "one-time-cost threshold is at least the recurring-cost threshold"


def delta_star_one_time(params: GameParams) -> ThresholdReport:
    """Grim-backed cooperation threshold when the cost is paid once.

    Closed form (p - 2c) / (p - p**2*beta + p**2 - 2c), defined for a
    constant cost model (k == 0).  A one-time cost makes permanent
    defection cheaper, so this threshold is never below the recurring
    one.
    """
    if params.cost_timing is not CostTiming.ONE_TIME_FIXED:
        raise ValueError("delta_star_one_time requires one-time cost timing")
    if params.cost.k != 0.0:
        raise ValueError("one-time cost analysis requires a constant cost model (k == 0)")
    p = params.p
    c = params.evaluated_cost()
    num = p - 2.0 * c
    den = p - p * p * params.beta + p * p - 2.0 * c
    if den > 0.0:
        value = num / den
    else:
        # den <= 0 forces num <= den <= 0 (num = den - p**2*(1-beta)), so
        # defection never beats cooperation at any delta in [0, 1).
        value = 0.0 if num == 0.0 else -math.inf
    return ThresholdReport(
        delta_star=value, regime=classify_regime(value), note=_ONE_TIME_NOTE
    )


@dataclass(frozen=True)
class AsymmetricThresholds:
    """Per-player thresholds plus which player constrains cooperation.

    ``sustainable`` requires every player's own patience to clear their
    own threshold.  The binding player has the largest threshold-minus-
    patience slack; ties go to the larger threshold, then to player 1.
    """

    player1: ThresholdReport
    player2: ThresholdReport
    sustainable: bool
    binding_player: int


def thresholds_asymmetric(
    player1: PlayerProfile,
    player2: PlayerProfile,
    beta: float,
    strategy: Strategy = Strategy.GRIM,
) -> AsymmetricThresholds:
    """Cooperation thresholds when the players differ in p, cost, or patience.

    Grim: delta_i* = (p_i - 2c_i) / ((1 - beta) p_1 p_2 + p_j).
    Tit-for-tat: delta_i* = (p_i - 2c_i) / p_j.
    """
    if not 0.0 <= beta <= 1.0:
        raise ValueError(f"degradation factor beta must be in [0, 1], got {beta}")

    def one_side(me: PlayerProfile, other: PlayerProfile) -> ThresholdReport:
        num = me.p - 2.0 * me.evaluated_cost()
        if strategy is Strategy.GRIM:
            den = (1.0 - beta) * me.p * other.p + other.p
        else:
            den = other.p
        return _ratio_report(num, den)

    r1 = one_side(player1, player2)
    r2 = one_side(player2, player1)
    sustainable = player1.delta >= r1.delta_star and player2.delta >= r2.delta_star
    slack1 = r1.delta_star - player1.delta
    slack2 = r2.delta_star - player2.delta
    if slack1 > slack2:
        binding = 1
    elif slack2 > slack1:
        binding = 2
    elif r1.delta_star >= r2.delta_star:
        binding = 1
    else:
        binding = 2
    return AsymmetricThresholds(
        player1=r1, player2=r2, sustainable=sustainable, binding_player=binding
    )


class ProbeVariable(Enum):
    """Parameter perturbed by a monotonicity probe."""

    COST = "cost"
    BETA = "beta"
    P = "p"


@dataclass(frozen=True)
class ProbeResult:
    """Sign and magnitude of a central-difference derivative of delta_star."""

    sign: int
    derivative: float


def monotonicity_probe(
    params: GameParams, variable: ProbeVariable, step: float = 1e-5
) -> ProbeResult:
    """Numerically differentiate the grim threshold in one parameter.

    COST perturbs the cost coefficient ``a``; P perturbs the success
    probability with the cost model re-evaluated at the shifted p.
    """
    if step <= 0.0:
        raise ValueError(f"step must be > 0, got {step}")

    def at(p: float, a: float, beta: float) -> float:
        shifted = GameParams(
            p=p,
            cost=replace(params.cost, a=a),
            beta=beta,
            cost_timing=params.cost_timing,
        )
        return delta_star_grim(shifted).delta_star

    p, a, beta = params.p, params.cost.a, params.beta
    if variable is ProbeVariable.COST:
        if a - step < 0.0:
            raise ValueError("cost coefficient within one step of its lower bound 0")
        hi = at(p, a + step, beta)
        lo = at(p, a - step, beta)
    elif variable is ProbeVariable.BETA:
        if beta - step < 0.0 or beta + step > 1.0:
            raise ValueError("beta within one step of the boundary of [0, 1]")
        hi = at(p, a, beta + step)
        lo = at(p, a, beta - step)
    else:
        if p - step <= 0.0 or p + step > 1.0:
            raise ValueError("p within one step of the boundary of (0, 1]")
        hi = at(p + step, a, beta)
        lo = at(p - step, a, beta)
    derivative = (hi - lo) / (2.0 * step)
    sign = (derivative > 0.0) - (derivative < 0.0)
    return ProbeResult(sign=sign, derivative=derivative)
