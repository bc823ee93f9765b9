"""Discounted values of cooperation and of canonical defection paths.

All values are normalized discounted sums: round t is weighted by
``delta**(t-1)``, so permanent mutual cooperation is worth
``0.5 / (1 - delta)``.  A defection path fixes both players' action
sequences (the defector's best deviation and the opponent's scripted
punishment) and sums the resulting expected stage payoffs.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from enum import Enum

import numpy as np

from .game_core import GameParams, stage_payoffs

__all__ = [
    "CurveSample",
    "DefectionPattern",
    "FutileReport",
    "GRIM_PATH",
    "ONE_TIME_GRIM_PATH",
    "PatternKind",
    "PeakResult",
    "TFT_ALTERNATING",
    "TFT_SINGLE",
    "defection_curve",
    "futile_defense",
    "peak_defection",
    "tft_k_rounds",
    "v_cooperate",
    "v_defect",
]


class PatternKind(Enum):
    """Scripted punishment path following a first defection."""

    GRIM_PATH = "grim"
    TFT_SINGLE = "tft-single"
    TFT_ALTERNATING = "tft-alternating"
    TFT_K_ROUNDS = "tft-k"
    ONE_TIME_GRIM_PATH = "one-time-grim"


@dataclass(frozen=True)
class DefectionPattern:
    """A pattern kind plus its retaliation length for k-round paths."""

    kind: PatternKind
    k: int | None = None

    def __post_init__(self):
        if self.kind is PatternKind.TFT_K_ROUNDS:
            if self.k is None or self.k < 1:
                raise ValueError("TFT_K_ROUNDS requires an integer k >= 1")
        elif self.k is not None:
            raise ValueError(f"{self.kind.value} takes no k parameter")


GRIM_PATH = DefectionPattern(PatternKind.GRIM_PATH)
TFT_SINGLE = DefectionPattern(PatternKind.TFT_SINGLE)
TFT_ALTERNATING = DefectionPattern(PatternKind.TFT_ALTERNATING)
ONE_TIME_GRIM_PATH = DefectionPattern(PatternKind.ONE_TIME_GRIM_PATH)


def tft_k_rounds(k: int) -> DefectionPattern:
    return DefectionPattern(PatternKind.TFT_K_ROUNDS, k)


def _check_delta(delta: float) -> None:
    if not 0.0 <= delta < 1.0:
        raise ValueError(f"discount factor delta must be in [0, 1), got {delta}")


def v_cooperate(params: GameParams, delta: float) -> float:
    """Value of permanent mutual cooperation: R / (1 - delta)."""
    _check_delta(delta)
    return 0.5 / (1.0 - delta)


def v_defect(params: GameParams, delta: float, pattern: DefectionPattern) -> float:
    """Value of defecting at round 1 against the pattern's punisher.

    Grim path: T + delta * Q / (1 - delta).
    Single tit-for-tat reprisal: T + delta * S + delta**2 * R / (1 - delta).
    Alternating reprisals: (T + delta * S) / (1 - delta**2).
    k-round reprisal: T, then Q while punished and still defecting, one S,
    then R forever.
    One-time grim path: as grim, but the continuation rounds carry no
    attack cost (already paid at round 1); requires a constant cost model.
    """
    _check_delta(delta)
    m = stage_payoffs(params)
    kind = pattern.kind
    if kind is PatternKind.GRIM_PATH:
        return m.T + delta * m.Q / (1.0 - delta)
    if kind is PatternKind.TFT_SINGLE:
        return m.T + delta * m.S + delta * delta * m.R / (1.0 - delta)
    if kind is PatternKind.TFT_ALTERNATING:
        return (m.T + delta * m.S) / (1.0 - delta * delta)
    if kind is PatternKind.TFT_K_ROUNDS:
        k = pattern.k
        dk = delta ** k
        return (
            m.T
            + (delta - dk) / (1.0 - delta) * m.Q
            + dk * m.S
            + dk * delta / (1.0 - delta) * m.R
        )
    # One-time grim path: the continuation repeats Q without the cost.
    if params.cost.k != 0.0:
        raise ValueError("one-time cost analysis requires a constant cost model (k == 0)")
    c = params.evaluated_cost()
    return m.T + delta * (m.Q + c) / (1.0 - delta)


@dataclass(frozen=True)
class CurveSample:
    """One point of a value curve over the attack success probability."""

    p: float
    v_c: float
    v_d: float
    gap: float


def defection_curve(
    params_template: GameParams,
    delta: float,
    p_grid,
    pattern: DefectionPattern,
) -> list[CurveSample]:
    """Evaluate V_C and V_D over a grid of success probabilities.

    The template supplies the cost model, beta, and timing; its ``p`` is
    replaced by each grid value (so the cost re-evaluates at each p).
    """
    _check_delta(delta)
    grid = list(p_grid)
    if not grid:
        raise ValueError("p_grid must contain at least one point")
    samples = []
    for p in grid:
        params = replace(params_template, p=float(p))
        vc = v_cooperate(params, delta)
        vd = v_defect(params, delta, pattern)
        samples.append(CurveSample(p=float(p), v_c=vc, v_d=vd, gap=vd - vc))
    return samples


@dataclass(frozen=True)
class PeakResult:
    """Location and value of the maximum defection value over p."""

    p_peak: float
    v_d_max: float


_GOLDEN_RATIO = (np.sqrt(5.0) - 1.0) / 2.0


def peak_defection(
    params_template: GameParams,
    delta: float,
    pattern: DefectionPattern,
    lo: float = 0.0,
    hi: float = 1.0,
    grid_points: int = 1001,
    tol: float = 1e-6,
) -> PeakResult:
    """Locate the p that maximizes V_D on [lo, hi].

    Coarse grid scan (first maximum wins ties) followed by golden-section
    refinement of the bracketing interval down to width ``tol``; the
    interval endpoints are re-checked so boundary maxima land exactly on
    lo or hi.
    """
    if not 0.0 < delta < 1.0:
        raise ValueError(f"discount factor delta must be in (0, 1), got {delta}")
    if not 0.0 <= lo < hi <= 1.0:
        raise ValueError(f"need 0 <= lo < hi <= 1, got [{lo}, {hi}]")
    if grid_points < 3:
        raise ValueError(f"grid_points must be >= 3, got {grid_points}")

    def value(p: float) -> float:
        return v_defect(replace(params_template, p=float(p)), delta, pattern)

    grid = np.linspace(lo, hi, grid_points)
    values = np.array([value(p) for p in grid])
    best = int(np.argmax(values))
    a = grid[max(best - 1, 0)]
    b = grid[min(best + 1, grid_points - 1)]

    # Golden-section search for the maximum on [a, b].
    x1 = b - _GOLDEN_RATIO * (b - a)
    x2 = a + _GOLDEN_RATIO * (b - a)
    f1, f2 = value(x1), value(x2)
    while b - a > tol:
        if f1 < f2:
            a, x1, f1 = x1, x2, f2
            x2 = a + _GOLDEN_RATIO * (b - a)
            f2 = value(x2)
        else:
            b, x2, f2 = x2, x1, f1
            x1 = b - _GOLDEN_RATIO * (b - a)
            f1 = value(x1)
    p_best = (a + b) * 0.5
    v_best = value(p_best)
    # Boundary maxima: prefer an exact endpoint when it is at least as
    # good, and the smaller p on exact ties.
    for candidate in (hi, lo):
        v_cand = value(candidate)
        if v_cand > v_best or (v_cand == v_best and candidate < p_best):
            p_best, v_best = candidate, v_cand
    return PeakResult(p_peak=float(p_best), v_d_max=float(v_best))


@dataclass(frozen=True)
class FutileReport:
    """Whether pushing the attack success rate past the peak loses value.

    When the defection value peaks strictly inside [0, 1), every success
    rate in ``futile_interval`` buys a worse deviation than the peak:
    further investment in attack strength is self-defeating.
    """

    p_peak: float
    v_d_max: float
    futile_interval: tuple[float, float] | None
    exists: bool


def futile_defense(
    params_template: GameParams, delta: float, pattern: DefectionPattern
) -> FutileReport:
    """Report the futile region of attack strength, if any."""
    peak = peak_defection(params_template, delta, pattern)
    exists = bool(peak.p_peak < 1.0)
    interval = (peak.p_peak, 1.0) if exists else None
    return FutileReport(
        p_peak=peak.p_peak,
        v_d_max=peak.v_d_max,
        futile_interval=interval,
        exists=exists,
    )
