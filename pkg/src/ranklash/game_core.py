"""Stage game for a two-provider ranking-manipulation contest.

Two content providers share a unit market mediated by a ranked listing.
Each round a provider either plays fair (cooperate) or runs a
manipulation attack (defect).  An attack succeeds with probability
``p``; a lone successful attacker captures the whole market, while the
victim gets nothing.  If both attack and both succeed the market
degrades to a fraction ``beta`` and is split evenly.  Failed attacks
leave the even split intact.  Attacking costs ``a * p**k``, charged
every attacking round or once at the first attack depending on the
cost timing.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

__all__ = [
    "CostModel",
    "CostTiming",
    "GameParams",
    "OrderingReport",
    "PayoffMatrix",
    "PlayerProfile",
    "check_pd_ordering",
    "eval_cost",
    "stage_payoffs",
    "stage_payoffs_asymmetric",
]


class CostTiming(Enum):
    """When the attack cost is charged."""

    RECURRING = "recurring"
    ONE_TIME_FIXED = "one-time"


@dataclass(frozen=True)
class CostModel:
    """Attack cost as a power law of the success probability: ``a * p**k``.

    ``k == 0`` is a flat per-round fee, ``k == 1`` scales linearly with
    attack strength, larger ``k`` makes strong attacks disproportionately
    expensive.
    """

    a: float
    k: float = 0.0

    def __post_init__(self):
        if not self.a >= 0.0:
            raise ValueError(f"cost coefficient a must be >= 0, got {self.a}")
        if not self.k >= 0.0:
            raise ValueError(f"cost exponent k must be >= 0, got {self.k}")

    @classmethod
    def constant(cls, a: float) -> "CostModel":
        return cls(a, 0.0)

    @classmethod
    def linear(cls, a: float) -> "CostModel":
        return cls(a, 1.0)

    @classmethod
    def quadratic(cls, a: float) -> "CostModel":
        return cls(a, 2.0)

    def __call__(self, p: float) -> float:
        return eval_cost(self, p)


def eval_cost(model: CostModel, p: float) -> float:
    """Evaluate ``a * p**k`` at success probability ``p``.

    ``p**0 == 1`` also at ``p == 0``, so a constant model charges ``a``
    everywhere.
    """
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"success probability p must be in [0, 1], got {p}")
    return model.a * p ** model.k


@dataclass(frozen=True)
class GameParams:
    """Symmetric stage-game configuration."""

    p: float
    cost: CostModel
    beta: float
    cost_timing: CostTiming = CostTiming.RECURRING

    def __post_init__(self):
        if not 0.0 <= self.p <= 1.0:
            raise ValueError(f"success probability p must be in [0, 1], got {self.p}")
        if not 0.0 <= self.beta <= 1.0:
            raise ValueError(f"degradation factor beta must be in [0, 1], got {self.beta}")

    def evaluated_cost(self) -> float:
        return eval_cost(self.cost, self.p)


@dataclass(frozen=True)
class PlayerProfile:
    """One player's parameters in an asymmetric contest."""

    p: float
    cost: CostModel
    delta: float = 0.0

    def __post_init__(self):
        if not 0.0 <= self.p <= 1.0:
            raise ValueError(f"success probability p must be in [0, 1], got {self.p}")
        if not 0.0 <= self.delta < 1.0:
            raise ValueError(f"discount factor delta must be in [0, 1), got {self.delta}")

    def evaluated_cost(self) -> float:
        return eval_cost(self.cost, self.p)


@dataclass(frozen=True)
class PayoffMatrix:
    """Expected one-shot payoffs for one player.

    R: both cooperate.  T: lone attacker.  S: victim of a lone attack.
    Q: both attack.
    """

    R: float
    T: float
    S: float
    Q: float


def stage_payoffs(params: GameParams) -> PayoffMatrix:
    """Expected stage payoffs under symmetric parameters."""
    p = params.p
    beta = params.beta
    c = params.evaluated_cost()
    r = 0.5
    t = p + (1.0 - p) * 0.5 - c
    s = (1.0 - p) * 0.5
    q = p * p * (beta * 0.5) + p * (1.0 - p) + (1.0 - p) * (1.0 - p) * 0.5 - c
    return PayoffMatrix(R=r, T=t, S=s, Q=q)


def stage_payoffs_asymmetric(
    player1: PlayerProfile, player2: PlayerProfile, beta: float
) -> tuple[PayoffMatrix, PayoffMatrix]:
    """Expected stage payoffs when the two players differ in ``p`` or cost.

    Returns one matrix per player.  ``T_i``/``S_i`` describe player ``i``
    attacking alone / being attacked alone, and ``Q_i`` the mutual-attack
    round from player ``i``'s side.
    """
    if not 0.0 <= beta <= 1.0:
        raise ValueError(f"degradation factor beta must be in [0, 1], got {beta}")

    def one_side(me: PlayerProfile, other: PlayerProfile) -> PayoffMatrix:
        pi, pj = me.p, other.p
        c = me.evaluated_cost()
        t = pi + (1.0 - pi) * 0.5 - c
        s = (1.0 - pj) * 0.5
        q = pi * pj * (beta * 0.5) + pi * (1.0 - pj) + (1.0 - pi) * (1.0 - pj) * 0.5 - c
        return PayoffMatrix(R=0.5, T=t, S=s, Q=q)

    return one_side(player1, player2), one_side(player2, player1)


@dataclass(frozen=True)
class OrderingReport:
    """Whether the stage game is a prisoner's dilemma (T > R > Q > S).

    ``analytic_bound`` is the cost level ``p/2 + (beta - 1) * p**2 / 2``
    below which Q > S holds; ``cost_below_half_p`` tracks the separate
    condition ``c < p/2`` that governs T > R.
    """

    holds: bool
    violated_pairs: list[str] = field(default_factory=list)
    analytic_bound: float = 0.0
    cost_below_bound: bool = False
    cost_below_half_p: bool = False


def check_pd_ordering(matrix: PayoffMatrix, params: GameParams) -> OrderingReport:
    """Check the strict ordering T > R > Q > S and its cost conditions."""
    violated = []
    if not matrix.T > matrix.R:
        violated.append("T>R")
    if not matrix.R > matrix.Q:
        violated.append("R>Q")
    if not matrix.Q > matrix.S:
        violated.append("Q>S")
    p = params.p
    c = params.evaluated_cost()
    bound = p * 0.5 + (params.beta - 1.0) * p * p * 0.5
    return OrderingReport(
        holds=not violated,
        violated_pairs=violated,
        analytic_bound=bound,
        cost_below_bound=c < bound,
        cost_below_half_p=c < p * 0.5,
    )
