"""Vectorized numpy episode kernel (fallback for the compiled core).

Operation order matches the compiled kernel exactly: per round, each
episode's accumulator receives ``w * (share - cost)`` with no fused
multiply-add, so both engines produce bit-identical totals.
"""

from __future__ import annotations

import numpy as np

from ._stream import episode_base, uniforms

__all__ = ["run_pair_batch"]


def run_pair_batch(
    e_start: int,
    e_stop: int,
    seed: int,
    actions1: np.ndarray,
    actions2: np.ndarray,
    cost1: np.ndarray,
    cost2: np.ndarray,
    p1: float,
    p2: float,
    beta: float,
    delta1: float,
    delta2: float,
    out1: np.ndarray,
    out2: np.ndarray,
) -> None:
    """Simulate episodes [e_start, e_stop) and write discounted totals.

    ``actions*`` are uint8 round scripts (1 = attack), ``cost*`` the
    per-round charges already resolved for cost timing.  ``out*`` are
    views of length ``e_stop - e_start``.
    """
    count = e_stop - e_start
    base = episode_base(seed, np.arange(e_start, e_stop, dtype=np.uint64))
    acc1 = np.zeros(count)
    acc2 = np.zeros(count)
    w1 = 1.0
    w2 = 1.0
    half = 0.5
    beta_half = 0.5 * beta
    rounds = len(actions1)
    for t in range(rounds):
        a1 = bool(actions1[t])
        a2 = bool(actions2[t])
        c1t = float(cost1[t])
        c2t = float(cost2[t])
        if a1 and a2:
            s1 = uniforms(base, t, 0) < p1
            s2 = uniforms(base, t, 1) < p2
            both = s1 & s2
            m1 = np.where(both, beta_half, np.where(s1, 1.0, np.where(s2, 0.0, half)))
            m2 = np.where(both, beta_half, np.where(s2, 1.0, np.where(s1, 0.0, half)))
            acc1 += w1 * (m1 - c1t)
            acc2 += w2 * (m2 - c2t)
        elif a1:
            s1 = uniforms(base, t, 0) < p1
            m1 = np.where(s1, 1.0, half)
            m2 = np.where(s1, 0.0, half)
            acc1 += w1 * (m1 - c1t)
            acc2 += w2 * (m2 - c2t)
        elif a2:
            s2 = uniforms(base, t, 1) < p2
            m1 = np.where(s2, 0.0, half)
            m2 = np.where(s2, 1.0, half)
            acc1 += w1 * (m1 - c1t)
            acc2 += w2 * (m2 - c2t)
        else:
            acc1 += w1 * (half - c1t)
            acc2 += w2 * (half - c2t)
        w1 *= delta1
        w2 *= delta2
    out1[:] = acc1
    out2[:] = acc2
