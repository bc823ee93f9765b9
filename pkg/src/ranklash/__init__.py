"""Repeated-game analysis of ranking-manipulation incentives.

Closed-form stage payoffs and cooperation thresholds for a two-provider
ranking contest, a seeded Monte Carlo simulator that validates them,
N-player extensions, and (p, delta) region sweeps.  The ``ranklash``
command line exposes the same operations.
"""

from .game_core import (
    CostModel,
    CostTiming,
    GameParams,
    OrderingReport,
    PayoffMatrix,
    PlayerProfile,
    check_pd_ordering,
    eval_cost,
    stage_payoffs,
    stage_payoffs_asymmetric,
)
from .multiplayer import (
    ModeDiscrepancy,
    MultiParams,
    MultiPayoffs,
    ShareMode,
    TrendReport,
    mode_discrepancy,
    multi_delta_star,
    multi_stage_payoffs,
    multi_trend,
)
from .sweep import (
    BoundaryPoint,
    RegionGrid,
    SweepSpec,
    SweepStrategy,
    boundary_extract,
    region_area,
    region_sweep,
)
from .thresholds import (
    AsymmetricThresholds,
    CostThreshold,
    KRoundsReport,
    OptimalK,
    ProbeResult,
    ProbeVariable,
    Regime,
    Strategy,
    ThresholdReport,
    classify_regime,
    cost_threshold_grim,
    delta_star_grim,
    delta_star_one_time,
    delta_star_tft,
    monotonicity_probe,
    thresholds_asymmetric,
    tft_k_classify,
)
from .value_funcs import (
    GRIM_PATH,
    ONE_TIME_GRIM_PATH,
    TFT_ALTERNATING,
    TFT_SINGLE,
    CurveSample,
    DefectionPattern,
    FutileReport,
    PatternKind,
    PeakResult,
    defection_curve,
    futile_defense,
    peak_defection,
    tft_k_rounds,
    v_cooperate,
    v_defect,
)

__version__ = "0.1.0"
