#!/usr/bin/env python3
"""Throughput comparison of the compiled and pure-Python episode kernels.

Runs the same seeded workload through both kernels, reports episodes
per second and the speedup, and checks that the two engines produce
bit-identical estimates.  Engine selection goes through the public
RANKLASH_ENGINE switch, so what is measured here is exactly what
estimate_values runs.

Usage:
    python3 benchmarks/benchmark_engines.py
    python3 benchmarks/benchmark_engines.py --episodes 500000 --delta 0.95
"""

import argparse
import os
import time

from ranklash import CostModel, GameParams
from ranklash.simulator import (
    Action,
    AllDefect,
    DefectKThenCooperate,
    GrimTrigger,
    SimConfig,
    TitForTat,
    estimate_values,
    truncation_horizon,
)

PAIRINGS = {
    "grim": lambda: (AllDefect(), GrimTrigger()),
    "tft": lambda: (DefectKThenCooperate(1), TitForTat()),
    "alternating": lambda: (TitForTat(Action.ATTACK), TitForTat()),
    "tft3": lambda: (DefectKThenCooperate(3), TitForTat()),
}


def compiled_available() -> bool:
    try:
        from ranklash import _simcore  # noqa: F401
    except ImportError:
        return False
    return True


def time_engine(engine: str, config: SimConfig, pairing: str, repeats: int):
    os.environ["RANKLASH_ENGINE"] = engine
    s1, s2 = PAIRINGS[pairing]()
    report = estimate_values(s1, s2, config)  # warmup, also keeps the result
    best = float("inf")
    for _ in range(repeats):
        start = time.perf_counter()
        estimate_values(s1, s2, config)
        best = min(best, time.perf_counter() - start)
    return report, best


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--episodes", type=int, default=200_000)
    parser.add_argument("--repeats", type=int, default=3)
    parser.add_argument("--pairing", choices=sorted(PAIRINGS), default="grim")
    parser.add_argument("--p", type=float, default=0.5)
    parser.add_argument("--cost", type=float, default=0.1)
    parser.add_argument("--beta", type=float, default=0.4)
    parser.add_argument("--delta", type=float, default=0.9)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()

    params = GameParams(p=args.p, cost=CostModel.constant(args.cost), beta=args.beta)
    config = SimConfig(
        params=params, delta=args.delta, episodes=args.episodes, master_seed=args.seed
    )
    print(
        f"pairing={args.pairing}  episodes={args.episodes}  "
        f"horizon={truncation_horizon(config)}  delta={args.delta}  seed={args.seed}"
    )

    saved = os.environ.get("RANKLASH_ENGINE")
    try:
        results = {}
        for engine in ("python", "compiled"):
            if engine == "compiled" and not compiled_available():
                print("compiled : not available (package built without the extension)")
                continue
            report, best = time_engine(engine, config, args.pairing, args.repeats)
            results[engine] = (report, best)
            rate = args.episodes / best
            print(
                f"{engine:8s} : {best:7.3f} s  ({rate:12,.0f} episodes/s)  "
                f"mean={report.mean[0]:.9f}"
            )
    finally:
        if saved is None:
            os.environ.pop("RANKLASH_ENGINE", None)
        else:
            os.environ["RANKLASH_ENGINE"] = saved

    if len(results) == 2:
        py_report, py_best = results["python"]
        c_report, c_best = results["compiled"]
        if py_report.mean != c_report.mean or py_report.std_error != c_report.std_error:
            print("MISMATCH: engines disagree on the estimates")
            return 1
        print(f"speedup  : {py_best / c_best:.1f}x  (estimates bit-identical)")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
