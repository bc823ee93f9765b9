"""N-provider stage game with M simultaneous attackers.

Successful attackers split the market evenly among themselves; if every
attack fails the market stays evenly split among all N providers; if
all N providers attack and all succeed the market degrades by beta.

Two share conventions are provided.  AS_WRITTEN weights the k-success
term by C(M, k)/k, which aggregates the share handed to *a* successful
attacker rather than the focal player's expectation; PER_PLAYER weights
by C(M-1, k-1)/k, conditioning on the focal attacker being one of the k
successes.  The two disagree for N >= 2, which ``mode_discrepancy``
quantifies.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from enum import Enum

from .game_core import CostModel, eval_cost
from .thresholds import Strategy, ThresholdReport, _ratio_report, classify_regime

__all__ = [
    "ModeDiscrepancy",
    "MultiParams",
    "MultiPayoffs",
    "ShareMode",
    "TrendReport",
    "mode_discrepancy",
    "multi_delta_star",
    "multi_stage_payoffs",
    "multi_trend",
]


class ShareMode(Enum):
    """How the k-successes term weights the focal attacker's share."""

    AS_WRITTEN = "as-written"
    PER_PLAYER = "per-player"


@dataclass(frozen=True)
class MultiParams:
    """N-player contest configuration with M attackers."""

    n: int
    m: int
    p: float
    cost: CostModel
    beta: float
    mode: ShareMode = ShareMode.AS_WRITTEN

    def __post_init__(self):
        if self.n < 2:
            raise ValueError(f"need at least 2 players, got n={self.n}")
        if not 1 <= self.m < self.n:
            raise ValueError(f"need 1 <= m < n, got m={self.m}, n={self.n}")
        if not 0.0 <= self.p <= 1.0:
            raise ValueError(f"success probability p must be in [0, 1], got {self.p}")
        if not 0.0 <= self.beta <= 1.0:
            raise ValueError(f"degradation factor beta must be in [0, 1], got {self.beta}")


@dataclass(frozen=True)
class MultiPayoffs:
    """Stage payoffs of the N-player contest (R, T, S, Q as in the pair game)."""

    R: float
    T: float
    S: float
    Q: float
    mode: ShareMode


def _share_sum(trials: int, p: float, k_hi: int, per_player: bool) -> float:
    """Sum over k = 1..k_hi of the k-successes share terms.

    AS_WRITTEN term: C(trials, k) p**k (1-p)**(trials-k) / k.
    PER_PLAYER term: C(trials-1, k-1) p**k (1-p)**(trials-k) / k.
    Terms are built in log space and summed largest-first, which stays
    stable for trials well past 10**4.
    """
    if k_hi < 1 or p == 0.0:
        return 0.0
    if p == 1.0:
        # Only the all-succeed term survives, and only if it is in range;
        # C(trials, trials)/trials == C(trials-1, trials-1)/trials == 1/trials.
        return 0.0 if k_hi < trials else 1.0 / trials
    log_p = math.log(p)
    log_1p = math.log1p(-p)
    terms = []
    for k in range(1, k_hi + 1):
        if per_player:
            log_comb = math.lgamma(trials) - math.lgamma(k) - math.lgamma(trials - k + 1)
        else:
            log_comb = (
                math.lgamma(trials + 1) - math.lgamma(k + 1) - math.lgamma(trials - k + 1)
            )
        terms.append(math.exp(log_comb + k * log_p + (trials - k) * log_1p - math.log(k)))
    terms.sort(reverse=True)
    return math.fsum(terms)


def multi_stage_payoffs(params: MultiParams) -> MultiPayoffs:
    """Expected stage payoffs for a focal attacker and focal cooperator."""
    n, m, p = params.n, params.m, params.p
    c = eval_cost(params.cost, p)
    per_player = params.mode is ShareMode.PER_PLAYER
    fail_all_m = (1.0 - p) ** m
    fail_all_n = (1.0 - p) ** n
    r = 1.0 / n
    s = fail_all_m / n
    t = _share_sum(m, p, m, per_player) + fail_all_m / n - c
    q = (
        _share_sum(n, p, n - 1, per_player)
        + p ** n * (params.beta / n)
        + fail_all_n / n
        - c
    )
    return MultiPayoffs(R=r, T=t, S=s, Q=q, mode=params.mode)


def multi_delta_star(params: MultiParams, strategy: Strategy = Strategy.GRIM) -> ThresholdReport:
    """Cooperation threshold of the N-player contest.

    Grim: (T - R) / (T - Q).  Tit-for-tat: (T - R) / (R - S).
    Degenerate denominators resolve by the numerator's sign.
    """
    pay = multi_stage_payoffs(params)
    num = pay.T - pay.R
    if strategy is Strategy.GRIM:
        den = pay.T - pay.Q
        if den < 0.0:
            # Defection beats cooperation only below num/den here; that is
            # the whole of [0, 1) exactly when the ratio clears 1.
            if num >= 0.0:
                value = math.inf
            elif num / den >= 1.0:
                value = -math.inf
            else:
                raise ValueError(
                    "mutual attack outpays lone attack and cooperation; "
                    "no patience threshold exists for these parameters"
                )
            return ThresholdReport(delta_star=value, regime=classify_regime(value))
    else:
        den = pay.R - pay.S
    return _ratio_report(num, den)


@dataclass(frozen=True)
class ModeDiscrepancy:
    """Gap between the two share conventions at one parameter point."""

    as_written: MultiPayoffs
    per_player: MultiPayoffs
    t_gap: float
    q_gap: float
    max_abs_gap: float
    significant: bool


def mode_discrepancy(params: MultiParams, tol: float = 1e-12) -> ModeDiscrepancy:
    """Evaluate both share conventions and report how far they disagree."""
    aw = multi_stage_payoffs(replace(params, mode=ShareMode.AS_WRITTEN))
    pp = multi_stage_payoffs(replace(params, mode=ShareMode.PER_PLAYER))
    t_gap = aw.T - pp.T
    q_gap = aw.Q - pp.Q
    max_gap = max(abs(t_gap), abs(q_gap))
    return ModeDiscrepancy(
        as_written=aw,
        per_player=pp,
        t_gap=t_gap,
        q_gap=q_gap,
        max_abs_gap=max_gap,
        significant=max_gap > tol,
    )


@dataclass(frozen=True)
class TrendReport:
    """Threshold as a function of the attacker count M at fixed N.

    ``tail_monotone_decreasing`` checks strict decrease over all M at or
    above ceil(N/2); with fewer than two such points it is vacuously
    true.
    """

    n: int
    strategy: Strategy
    points: list[tuple[int, float]]
    tail_monotone_decreasing: bool


def multi_trend(
    n: int,
    p: float,
    cost: CostModel,
    beta: float,
    strategy: Strategy = Strategy.GRIM,
    mode: ShareMode = ShareMode.AS_WRITTEN,
) -> TrendReport:
    """Thresholds for every attacker count M = 1..N-1."""
    if n < 3:
        raise ValueError(f"trend needs n >= 3, got {n}")
    points = []
    for m in range(1, n):
        params = MultiParams(n=n, m=m, p=p, cost=cost, beta=beta, mode=mode)
        points.append((m, multi_delta_star(params, strategy).delta_star))
    tail_start = math.ceil(n / 2)
    tail = [v for m, v in points if m >= tail_start]
    monotone = all(b < a for a, b in zip(tail, tail[1:]))
    return TrendReport(
        n=n, strategy=strategy, points=points, tail_monotone_decreasing=monotone
    )
