"""Episode simulation, stage resolution, and exact pairing values.

The engine scripts both automata's deterministic action paths once per
pairing, resolves per-round attack successes from the counter-based
stream, and accumulates discounted payoffs.  A compiled core is used
when available; the numpy fallback is bit-identical.  Set
RANKLASH_ENGINE to ``compiled`` or ``python`` to force one, and
RANKLASH_THREADS to cap worker threads (0 or unset picks the CPU
count).
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from ..game_core import CostTiming, GameParams, PlayerProfile
from . import _simpy
from ._stream import MASK64
from .automata import Action, StrategyAutomaton, action_paths

try:
    from .. import _simcore
except ImportError:  # pragma: no cover - depends on the build environment
    _simcore = None

__all__ = [
    "SimConfig",
    "SimReport",
    "StageOutcome",
    "analytic_pair_value",
    "engine_name",
    "estimate_values",
    "resolve_stage",
    "run_episode",
    "truncation_horizon",
    "worker_count",
]

_CHUNK = 16384


def worker_count() -> int:
    """Worker threads to use; RANKLASH_THREADS=0 or unset means auto."""
    raw = os.environ.get("RANKLASH_THREADS", "0")
    try:
        n = int(raw)
    except ValueError:
        raise ValueError(f"RANKLASH_THREADS must be an integer, got {raw!r}") from None
    if n < 0:
        raise ValueError(f"RANKLASH_THREADS must be >= 0, got {n}")
    if n == 0:
        return os.cpu_count() or 1
    return n


def _kernel():
    mode = os.environ.get("RANKLASH_ENGINE", "auto")
    if mode == "python":
        return _simpy.run_pair_batch
    if mode == "compiled":
        if _simcore is None:
            raise RuntimeError("compiled simulator core is not available")
        return _simcore.run_pair_batch
    if mode != "auto":
        raise ValueError(f"RANKLASH_ENGINE must be auto, compiled, or python, got {mode!r}")
    return _simpy.run_pair_batch if _simcore is None else _simcore.run_pair_batch


def engine_name() -> str:
    """Which episode kernel estimate_values will run: compiled or python."""
    return "python" if _kernel() is _simpy.run_pair_batch else "compiled"


@dataclass(frozen=True)
class SimConfig:
    """Simulation settings for one pairing.

    With ``profiles`` set, each player's p, cost, and discount factor
    come from their profile (``delta`` is then unused) while ``params``
    still supplies beta and the cost timing.
    """

    params: GameParams
    delta: float
    episodes: int
    master_seed: int = 0
    horizon_epsilon: float = 1e-9
    profiles: tuple[PlayerProfile, PlayerProfile] | None = None

    def __post_init__(self):
        if not 0.0 <= self.delta < 1.0:
            raise ValueError(f"discount factor delta must be in [0, 1), got {self.delta}")
        if self.episodes < 1:
            raise ValueError(f"episodes must be >= 1, got {self.episodes}")
        if not self.horizon_epsilon > 0.0:
            raise ValueError(f"horizon_epsilon must be > 0, got {self.horizon_epsilon}")


@dataclass(frozen=True)
class _PairSpec:
    """Per-player parameters resolved from a SimConfig."""

    p1: float
    c1: float
    d1: float
    p2: float
    c2: float
    d2: float
    beta: float
    timing: CostTiming


def _pair_spec(config: SimConfig) -> _PairSpec:
    params = config.params
    if config.profiles is None:
        c = params.evaluated_cost()
        return _PairSpec(
            p1=params.p, c1=c, d1=config.delta,
            p2=params.p, c2=c, d2=config.delta,
            beta=params.beta, timing=params.cost_timing,
        )
    pr1, pr2 = config.profiles
    return _PairSpec(
        p1=pr1.p, c1=pr1.evaluated_cost(), d1=pr1.delta,
        p2=pr2.p, c2=pr2.evaluated_cost(), d2=pr2.delta,
        beta=params.beta, timing=params.cost_timing,
    )


def truncation_horizon(config: SimConfig) -> int:
    """Rounds needed so the truncated tail is below horizon_epsilon.

    Picks the smallest T with delta**T * (1 + c_max) < horizon_epsilon,
    using the larger discount factor and cost of the two players.
    """
    spec = _pair_spec(config)
    delta = max(spec.d1, spec.d2)
    c_max = max(spec.c1, spec.c2)
    if delta == 0.0:
        return 1
    eps = config.horizon_epsilon
    t = max(1, math.ceil(math.log(eps / (1.0 + c_max)) / math.log(delta)))
    while delta ** t * (1.0 + c_max) >= eps:
        t += 1
    return t


@dataclass(frozen=True)
class StageOutcome:
    """Resolved result of one simultaneous round."""

    actions: tuple[Action, Action]
    successes: tuple[bool, bool]
    payoffs: tuple[float, float]


def resolve_stage(
    actions: tuple[Action, Action],
    params: GameParams,
    success_draws: tuple[bool | None, bool | None],
    *,
    first_attack: tuple[bool, bool] = (True, True),
    player2: PlayerProfile | None = None,
) -> StageOutcome:
    """Resolve one round from actions and pre-drawn attack successes.

    ``success_draws`` must carry a bool for each attacker and None for
    each cooperator.  Under one-time cost timing the cost is charged
    only when ``first_attack`` marks the attack as the player's first.
    ``player2`` overrides the second player's p and cost for asymmetric
    contests.
    """
    a1, a2 = actions
    p1_attacks = a1 is Action.ATTACK
    p2_attacks = a2 is Action.ATTACK
    for attacks, draw, who in ((p1_attacks, success_draws[0], 1), (p2_attacks, success_draws[1], 2)):
        if not attacks and draw is not None:
            raise ValueError(f"success draw supplied for cooperating player {who}")
        if attacks and draw is None:
            raise ValueError(f"missing success draw for attacking player {who}")

    c1 = params.evaluated_cost()
    if player2 is None:
        c2 = c1
    else:
        c2 = player2.evaluated_cost()

    s1 = bool(success_draws[0]) if p1_attacks else False
    s2 = bool(success_draws[1]) if p2_attacks else False

    if p1_attacks and p2_attacks:
        if s1 and s2:
            m1 = m2 = params.beta * 0.5
        elif s1:
            m1, m2 = 1.0, 0.0
        elif s2:
            m1, m2 = 0.0, 1.0
        else:
            m1 = m2 = 0.5
    elif p1_attacks:
        m1, m2 = (1.0, 0.0) if s1 else (0.5, 0.5)
    elif p2_attacks:
        m1, m2 = (0.0, 1.0) if s2 else (0.5, 0.5)
    else:
        m1 = m2 = 0.5

    if params.cost_timing is CostTiming.ONE_TIME_FIXED:
        charge1 = c1 if (p1_attacks and first_attack[0]) else 0.0
        charge2 = c2 if (p2_attacks and first_attack[1]) else 0.0
    else:
        charge1 = c1 if p1_attacks else 0.0
        charge2 = c2 if p2_attacks else 0.0

    return StageOutcome(
        actions=actions,
        successes=(s1, s2),
        payoffs=(m1 - charge1, m2 - charge2),
    )


def _cost_schedule(actions: np.ndarray, c: float, timing: CostTiming) -> np.ndarray:
    """Per-round cost charges implied by an action script."""
    costs = np.zeros(len(actions))
    if timing is CostTiming.RECURRING:
        costs[actions == 1] = c
    else:
        first = np.flatnonzero(actions == 1)
        if len(first):
            costs[first[0]] = c
    return costs


def _prepared(s1: StrategyAutomaton, s2: StrategyAutomaton, config: SimConfig):
    spec = _pair_spec(config)
    horizon = truncation_horizon(config)
    a1, a2 = action_paths(s1, s2, horizon)
    cost1 = _cost_schedule(a1, spec.c1, spec.timing)
    cost2 = _cost_schedule(a2, spec.c2, spec.timing)
    return spec, horizon, a1, a2, cost1, cost2


@dataclass(frozen=True)
class SimReport:
    """Monte Carlo estimate of both players' discounted values."""

    mean: tuple[float, float]
    std_error: tuple[float, float]
    episodes: int
    horizon: int
    seed: int
    engine: str


def estimate_values(
    s1: StrategyAutomaton, s2: StrategyAutomaton, config: SimConfig
) -> SimReport:
    """Estimate discounted values over ``config.episodes`` episodes.

    Episodes are split into fixed-size chunks processed by a thread
    pool; the counter-based stream plus a fixed reduction order make the
    report bit-identical for any thread count.
    """
    spec, horizon, a1, a2, cost1, cost2 = _prepared(s1, s2, config)
    episodes = config.episodes
    seed = config.master_seed & MASK64
    kernel = _kernel()
    totals1 = np.empty(episodes)
    totals2 = np.empty(episodes)

    def run_chunk(lo: int, hi: int) -> None:
        kernel(
            lo, hi, seed, a1, a2, cost1, cost2,
            spec.p1, spec.p2, spec.beta, spec.d1, spec.d2,
            totals1[lo:hi], totals2[lo:hi],
        )

    bounds = [(lo, min(lo + _CHUNK, episodes)) for lo in range(0, episodes, _CHUNK)]
    workers = min(worker_count(), len(bounds))
    if workers <= 1:
        for lo, hi in bounds:
            run_chunk(lo, hi)
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            for future in [pool.submit(run_chunk, lo, hi) for lo, hi in bounds]:
                future.result()

    def summarize(totals: np.ndarray) -> tuple[float, float]:
        mean = float(np.mean(totals))
        if episodes > 1:
            se = float(np.std(totals, ddof=1) / math.sqrt(episodes))
        else:
            se = 0.0
        return mean, se

    mean1, se1 = summarize(totals1)
    mean2, se2 = summarize(totals2)
    return SimReport(
        mean=(mean1, mean2),
        std_error=(se1, se2),
        episodes=episodes,
        horizon=horizon,
        seed=config.master_seed,
        engine="python" if kernel is _simpy.run_pair_batch else "compiled",
    )


def run_episode(
    s1: StrategyAutomaton, s2: StrategyAutomaton, config: SimConfig, episode: int = 0
) -> tuple[float, float]:
    """Discounted payoffs of a single episode by its index.

    Matches episode ``episode`` of ``estimate_values`` exactly.
    """
    if episode < 0:
        raise ValueError(f"episode index must be >= 0, got {episode}")
    spec, _, a1, a2, cost1, cost2 = _prepared(s1, s2, config)
    seed = config.master_seed & MASK64
    out1 = np.empty(1)
    out2 = np.empty(1)
    _kernel()(
        episode, episode + 1, seed, a1, a2, cost1, cost2,
        spec.p1, spec.p2, spec.beta, spec.d1, spec.d2, out1, out2,
    )
    return float(out1[0]), float(out2[0])


def _expected_round(
    a1: bool, a2: bool, spec: _PairSpec, charge1: float, charge2: float
) -> tuple[float, float]:
    """Expected shares of one round minus the given cost charges."""
    p1, p2, beta = spec.p1, spec.p2, spec.beta
    if a1 and a2:
        degraded = p1 * p2 * (beta * 0.5)
        e1 = degraded + p1 * (1.0 - p2) + (1.0 - p1) * (1.0 - p2) * 0.5
        e2 = degraded + p2 * (1.0 - p1) + (1.0 - p1) * (1.0 - p2) * 0.5
    elif a1:
        e1 = p1 + (1.0 - p1) * 0.5
        e2 = (1.0 - p1) * 0.5
    elif a2:
        e1 = (1.0 - p2) * 0.5
        e2 = p2 + (1.0 - p2) * 0.5
    else:
        e1 = e2 = 0.5
    return e1 - charge1, e2 - charge2


def analytic_pair_value(
    s1: StrategyAutomaton,
    s2: StrategyAutomaton,
    params: GameParams,
    delta: float,
) -> tuple[float, float]:
    """Exact expected discounted values of a pairing, no truncation.

    Unrolls the joint automaton until its state repeats, then closes the
    geometric tail over the detected cycle.
    """
    if not 0.0 <= delta < 1.0:
        raise ValueError(f"discount factor delta must be in [0, 1), got {delta}")
    config = SimConfig(params=params, delta=delta, episodes=1)
    spec = _pair_spec(config)
    s1.reset()
    s2.reset()
    attacked1 = attacked2 = False
    seen: dict = {}
    rounds: list[tuple[float, float]] = []
    state = (s1.state_key(), s2.state_key(), attacked1, attacked2)
    while state not in seen:
        seen[state] = len(rounds)
        act1 = s1.next_action()
        act2 = s2.next_action()
        a1 = act1 is Action.ATTACK
        a2 = act2 is Action.ATTACK
        if spec.timing is CostTiming.ONE_TIME_FIXED:
            charge1 = spec.c1 if (a1 and not attacked1) else 0.0
            charge2 = spec.c2 if (a2 and not attacked2) else 0.0
        else:
            charge1 = spec.c1 if a1 else 0.0
            charge2 = spec.c2 if a2 else 0.0
        attacked1 = attacked1 or a1
        attacked2 = attacked2 or a2
        rounds.append(_expected_round(a1, a2, spec, charge1, charge2))
        s1.observe(act2)
        s2.observe(act1)
        state = (s1.state_key(), s2.state_key(), attacked1, attacked2)
        if len(rounds) > 100_000:
            raise RuntimeError("no cycle found; automaton state may be unbounded")

    start = seen[state]
    cycle_len = len(rounds) - start
    values = []
    for side in (0, 1):
        prefix = sum(rounds[t][side] * delta ** t for t in range(start))
        cycle = sum(rounds[start + j][side] * delta ** j for j in range(cycle_len))
        tail = delta ** start * cycle / (1.0 - delta ** cycle_len)
        values.append(prefix + tail)
    return values[0], values[1]
