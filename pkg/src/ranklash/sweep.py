"""Cooperation-region sweeps over the (p, delta) plane.

A sweep evaluates the cooperation threshold along a p axis and marks
every (p, delta) cell where patience clears the threshold.  Axis points
sit at cell centers (half-cell inset from the range ends), so areas are
plain cell fractions and no point lands on a degenerate boundary.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .game_core import CostModel, CostTiming, GameParams
from .thresholds import (
    Regime,
    ThresholdReport,
    delta_star_grim,
    delta_star_one_time,
    delta_star_tft,
)

__all__ = [
    "BoundaryPoint",
    "RegionGrid",
    "SweepSpec",
    "SweepStrategy",
    "boundary_extract",
    "region_area",
    "region_sweep",
]


class SweepStrategy(Enum):
    """Threshold family swept over the plane."""

    GRIM = "grim"
    TIT_FOR_TAT = "tft"
    ONE_TIME_GRIM = "one-time-grim"


@dataclass(frozen=True)
class SweepSpec:
    """Axes and game family of one sweep.

    Each axis is (lo, hi, points); points are placed at
    lo + (i + 0.5) * (hi - lo) / points.
    """

    strategy: SweepStrategy
    cost: CostModel
    beta: float
    p_axis: tuple[float, float, int] = (0.0, 1.0, 401)
    delta_axis: tuple[float, float, int] = (0.0, 1.0, 401)

    def __post_init__(self):
        if not 0.0 <= self.beta <= 1.0:
            raise ValueError(f"degradation factor beta must be in [0, 1], got {self.beta}")
        for name, (lo, hi, n) in (("p_axis", self.p_axis), ("delta_axis", self.delta_axis)):
            if not 0.0 <= lo < hi <= 1.0:
                raise ValueError(f"{name} range must satisfy 0 <= lo < hi <= 1, got [{lo}, {hi}]")
            if n < 2:
                raise ValueError(f"{name} needs at least 2 points, got {n}")
        if self.strategy is SweepStrategy.ONE_TIME_GRIM and self.cost.k != 0.0:
            raise ValueError("one-time-grim sweeps require a constant cost model (k == 0)")


def _axis_points(axis: tuple[float, float, int]) -> np.ndarray:
    lo, hi, n = axis
    return lo + (np.arange(n) + 0.5) * ((hi - lo) / n)


def _threshold_at(spec: SweepSpec, p: float) -> ThresholdReport:
    if spec.strategy is SweepStrategy.GRIM:
        return delta_star_grim(GameParams(p=p, cost=spec.cost, beta=spec.beta))
    if spec.strategy is SweepStrategy.TIT_FOR_TAT:
        return delta_star_tft(GameParams(p=p, cost=spec.cost, beta=spec.beta))
    return delta_star_one_time(
        GameParams(
            p=p, cost=spec.cost, beta=spec.beta, cost_timing=CostTiming.ONE_TIME_FIXED
        )
    )


@dataclass(frozen=True)
class RegionGrid:
    """Sweep output: thresholds per p and the cooperation cell mask.

    ``cells[i, j]`` is True when delta_values[j] sustains cooperation at
    p_values[i].
    """

    spec: SweepSpec
    p_values: np.ndarray
    delta_values: np.ndarray
    delta_star_row: np.ndarray
    regimes: list[Regime]
    cells: np.ndarray


def region_sweep(spec: SweepSpec) -> RegionGrid:
    """Evaluate the cooperation region on the spec's grid."""
    p_values = _axis_points(spec.p_axis)
    delta_values = _axis_points(spec.delta_axis)
    n_p = len(p_values)
    n_d = len(delta_values)
    delta_star_row = np.empty(n_p)
    regimes: list[Regime] = []
    cells = np.zeros((n_p, n_d), dtype=bool)
    for i, p in enumerate(p_values):
        report = _threshold_at(spec, float(p))
        delta_star_row[i] = report.delta_star
        regimes.append(report.regime)
        if report.regime is Regime.ALWAYS_COOPERATE:
            cells[i, :] = True
        elif report.regime is Regime.NEVER_COOPERATE:
            cells[i, :] = False
        else:
            cells[i, :] = delta_values >= report.delta_star
    return RegionGrid(
        spec=spec,
        p_values=p_values,
        delta_values=delta_values,
        delta_star_row=delta_star_row,
        regimes=regimes,
        cells=cells,
    )


def region_area(grid: RegionGrid) -> float:
    """Fraction of grid cells where cooperation is sustainable."""
    return float(grid.cells.mean())


@dataclass(frozen=True)
class BoundaryPoint:
    """One point of the cooperation boundary, clamped into [0, 1]."""

    p: float
    delta_star: float
    regime: Regime


def boundary_extract(grid: RegionGrid) -> list[BoundaryPoint]:
    """The threshold polyline over p, with out-of-range values clamped."""
    points = []
    for p, raw, regime in zip(grid.p_values, grid.delta_star_row, grid.regimes):
        clamped = min(max(raw, 0.0), 1.0)
        points.append(BoundaryPoint(p=float(p), delta_star=float(clamped), regime=regime))
    return points
