"""Counter-based uniform draws keyed by (seed, episode, round, player).

Every draw is a pure function of its key, so any subset of episodes can
be generated in any order, on any thread, with identical results.  The
mixer is the splitmix64 finalizer applied twice: once to spread the
seed/episode key, once to decorrelate the per-round offsets.  The
compiled simulator core implements the same arithmetic on native
uint64, producing bit-identical uniforms.
"""

from __future__ import annotations

import numpy as np

__all__ = ["episode_base", "uniform_for", "uniforms"]

GOLDEN = 0x9E3779B97F4A7C15
_MIX_A = 0xBF58476D1CE4E5B9
_MIX_B = 0x94D049BB133111EB
MASK64 = (1 << 64) - 1
_INV_2_53 = 1.0 / 9007199254740992.0  # 2**-53


def _mix64(z: np.ndarray) -> np.ndarray:
    """splitmix64 finalizer on a uint64 array (wrapping arithmetic)."""
    z = (z ^ (z >> np.uint64(30))) * np.uint64(_MIX_A)
    z = (z ^ (z >> np.uint64(27))) * np.uint64(_MIX_B)
    return z ^ (z >> np.uint64(31))


def episode_base(seed: int, episodes: np.ndarray) -> np.ndarray:
    """Per-episode base state for a batch of episode indices."""
    eps = np.asarray(episodes, dtype=np.uint64)
    with np.errstate(over="ignore"):
        z = np.uint64(seed & MASK64) + np.uint64(GOLDEN) * (eps + np.uint64(1))
        return _mix64(z)


def uniforms(base: np.ndarray, round_index: int, player: int) -> np.ndarray:
    """Uniform [0, 1) draws for one (round, player) across a batch."""
    offset = (GOLDEN * (2 * round_index + player + 1)) & MASK64
    with np.errstate(over="ignore"):
        z = _mix64(base + np.uint64(offset))
    return (z >> np.uint64(11)).astype(np.float64) * _INV_2_53


def uniform_for(seed: int, episode: int, round_index: int, player: int) -> float:
    """Single draw by key; matches the batch path bit for bit."""
    base = episode_base(seed, np.array([episode], dtype=np.uint64))
    return float(uniforms(base, round_index, player)[0])
