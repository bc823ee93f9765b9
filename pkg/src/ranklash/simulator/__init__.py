"""Monte Carlo simulation of the repeated ranking contest.

Strategy automata observe actions only, so the joint action path of a
pairing is deterministic; randomness enters solely through attack
success draws.  Draws come from a counter-based stream keyed by
(master seed, episode, round, player), which makes every estimate
independent of chunking and thread count.
"""

from .automata import (
    Action,
    AllCooperate,
    AllDefect,
    DefectKThenCooperate,
    GrimTrigger,
    StrategyAutomaton,
    TitForTat,
    action_paths,
    make_automaton,
)
from .engine import (
    SimConfig,
    SimReport,
    StageOutcome,
    analytic_pair_value,
    engine_name,
    estimate_values,
    resolve_stage,
    run_episode,
    truncation_horizon,
    worker_count,
)

__all__ = [
    "Action",
    "AllCooperate",
    "AllDefect",
    "DefectKThenCooperate",
    "GrimTrigger",
    "SimConfig",
    "SimReport",
    "StageOutcome",
    "StrategyAutomaton",
    "TitForTat",
    "action_paths",
    "analytic_pair_value",
    "engine_name",
    "estimate_values",
    "make_automaton",
    "resolve_stage",
    "run_episode",
    "truncation_horizon",
    "worker_count",
]
