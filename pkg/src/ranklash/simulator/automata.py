"""Deterministic repeated-game strategies under action monitoring.

Automata see the opponent's chosen actions, never whether an attack
succeeded.  Each round the engine asks both automata for their next
action and then shows each the other's choice.
"""

from __future__ import annotations

import re
from enum import Enum
from typing import Hashable

import numpy as np

__all__ = [
    "Action",
    "AllCooperate",
    "AllDefect",
    "DefectKThenCooperate",
    "GrimTrigger",
    "StrategyAutomaton",
    "TitForTat",
    "action_paths",
    "make_automaton",
]


class Action(Enum):
    COOPERATE = "C"
    ATTACK = "D"


class StrategyAutomaton:
    """Base class: a resettable, observable action machine."""

    name = "base"

    def reset(self) -> None:
        """Return to the pre-game state."""

    def next_action(self) -> Action:
        raise NotImplementedError

    def observe(self, opponent_action: Action) -> None:
        """Record the opponent's action for this round."""

    def state_key(self) -> Hashable:
        """Hashable internal state, used for cycle detection."""
        return None


class AllCooperate(StrategyAutomaton):
    """Cooperates unconditionally."""

    name = "all-cooperate"

    def next_action(self) -> Action:
        return Action.COOPERATE


class AllDefect(StrategyAutomaton):
    """Attacks unconditionally."""

    name = "all-defect"

    def next_action(self) -> Action:
        return Action.ATTACK


class GrimTrigger(StrategyAutomaton):
    """Cooperates until the opponent's first attack, then attacks forever."""

    name = "grim"

    def __init__(self):
        self.triggered = False

    def reset(self) -> None:
        self.triggered = False

    def next_action(self) -> Action:
        return Action.ATTACK if self.triggered else Action.COOPERATE

    def observe(self, opponent_action: Action) -> None:
        if opponent_action is Action.ATTACK:
            self.triggered = True

    def state_key(self) -> Hashable:
        return self.triggered


class TitForTat(StrategyAutomaton):
    """Opens with a fixed move, then mirrors the opponent's last action."""

    def __init__(self, opening: Action = Action.COOPERATE):
        self.opening = opening
        self.last_opponent: Action | None = None

    @property
    def name(self) -> str:
        return "tft" if self.opening is Action.COOPERATE else "tft-d"

    def reset(self) -> None:
        self.last_opponent = None

    def next_action(self) -> Action:
        return self.opening if self.last_opponent is None else self.last_opponent

    def observe(self, opponent_action: Action) -> None:
        self.last_opponent = opponent_action

    def state_key(self) -> Hashable:
        return self.last_opponent


class DefectKThenCooperate(StrategyAutomaton):
    """Attacks for the first k rounds, cooperates forever after."""

    def __init__(self, k: int):
        if k < 1:
            raise ValueError(f"defection length k must be >= 1, got {k}")
        self.k = k
        self.rounds_played = 0

    @property
    def name(self) -> str:
        return f"defect-{self.k}"

    def reset(self) -> None:
        self.rounds_played = 0

    def next_action(self) -> Action:
        return Action.ATTACK if self.rounds_played < self.k else Action.COOPERATE

    def observe(self, opponent_action: Action) -> None:
        self.rounds_played += 1

    def state_key(self) -> Hashable:
        # The count saturates once the attack phase is over.
        return min(self.rounds_played, self.k)


_DEFECT_K = re.compile(r"^defect-(\d+)$")


def make_automaton(spec: str) -> StrategyAutomaton:
    """Build an automaton from its command-line name.

    Known names: all-cooperate, all-defect, grim, tft (opens
    cooperating), tft-d (opens attacking), defect-K for an integer
    K >= 1.
    """
    fixed = {
        "all-cooperate": AllCooperate,
        "all-defect": AllDefect,
        "grim": GrimTrigger,
    }
    if spec in fixed:
        return fixed[spec]()
    if spec == "tft":
        return TitForTat(Action.COOPERATE)
    if spec == "tft-d":
        return TitForTat(Action.ATTACK)
    match = _DEFECT_K.match(spec)
    if match:
        return DefectKThenCooperate(int(match.group(1)))
    raise ValueError(
        f"unknown strategy {spec!r}; expected all-cooperate, all-defect, "
        "grim, tft, tft-d, or defect-K"
    )


def action_paths(
    s1: StrategyAutomaton, s2: StrategyAutomaton, rounds: int
) -> tuple[np.ndarray, np.ndarray]:
    """Unroll the deterministic joint action path for a fixed horizon.

    Returns two uint8 arrays (1 = attack).  Both automata are reset
    first.
    """
    s1.reset()
    s2.reset()
    a1 = np.zeros(rounds, dtype=np.uint8)
    a2 = np.zeros(rounds, dtype=np.uint8)
    for t in range(rounds):
        act1 = s1.next_action()
        act2 = s2.next_action()
        a1[t] = act1 is Action.ATTACK
        a2[t] = act2 is Action.ATTACK
        s1.observe(act2)
        s2.observe(act1)
    return a1, a2
