"""Command-line interface to the analysis engine.

Subcommands mirror the library: payoffs, ordering, threshold, curves,
futile, region, multi, multi-trend, simulate.  Every subcommand accepts
``--out`` (path, ``-`` for stdout), ``--format`` (csv, json, svg), and
``--config`` (a flat ``key = value`` file supplying flag defaults;
explicit flags win).  Exit codes: 0 success, 2 usage error, 3 domain
error.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable

import numpy as np

from . import __version__
from .export import render_csv, render_json, svg_curves, svg_region, write_text
from .game_core import (
    CostModel,
    CostTiming,
    GameParams,
    PlayerProfile,
    check_pd_ordering,
    stage_payoffs,
    stage_payoffs_asymmetric,
)
from .multiplayer import (
    MultiParams,
    ShareMode,
    mode_discrepancy,
    multi_delta_star,
    multi_stage_payoffs,
    multi_trend,
)
from .simulator import SimConfig, estimate_values, make_automaton
from .sweep import SweepSpec, SweepStrategy, boundary_extract, region_area, region_sweep
from .thresholds import (
    Strategy,
    delta_star_grim,
    delta_star_one_time,
    delta_star_tft,
    thresholds_asymmetric,
    tft_k_classify,
)
from .value_funcs import (
    GRIM_PATH,
    ONE_TIME_GRIM_PATH,
    TFT_ALTERNATING,
    TFT_SINGLE,
    DefectionPattern,
    defection_curve,
    futile_defense,
    tft_k_rounds,
)

__all__ = ["main", "run_cli"]

DEFAULT_SEED = 0


class UsageError(Exception):
    """Bad flags, bad enum values, or missing required options (exit 2)."""


@dataclass(frozen=True)
class Flag:
    name: str
    convert: Callable
    default: object = None
    required: bool = False
    choices: tuple = ()
    help: str = ""


@dataclass
class CommandOutput:
    """One command's result plus its serializations."""

    data: object
    csv_header: list[str] | None = None
    csv_rows: list | None = None
    svg: str | None = None
    seed: int | None = None


# ---------------------------------------------------------------------------
# Shared flag groups

_COST_FLAGS = [
    Flag("cost", float, required=True, help="cost coefficient a in a * p**k"),
    Flag("cost-exponent", float, default=0.0, help="cost exponent k (default 0)"),
]
_BETA_FLAG = Flag("beta", float, required=True, help="degraded market fraction after mutual success")
_TIMING_FLAG = Flag(
    "cost-timing", str, default="recurring", choices=("recurring", "one-time"),
    help="charge the attack cost every attacking round, or only the first",
)

_PATTERN_CHOICES = ("grim", "tft-single", "tft-alternating", "tft-k", "one-time-grim")

_TIMINGS = {"recurring": CostTiming.RECURRING, "one-time": CostTiming.ONE_TIME_FIXED}
_SHARE_MODES = {"as-written": ShareMode.AS_WRITTEN, "per-player": ShareMode.PER_PLAYER}
_MULTI_STRATEGIES = {"grim": Strategy.GRIM, "tft": Strategy.TIT_FOR_TAT}
_SWEEP_STRATEGIES = {
    "grim": SweepStrategy.GRIM,
    "tft": SweepStrategy.TIT_FOR_TAT,
    "one-time-grim": SweepStrategy.ONE_TIME_GRIM,
}


def _cost_model(v: dict, coeff: str = "cost", expo: str = "cost-exponent") -> CostModel:
    return CostModel(a=v[coeff], k=v[expo])


def _pattern(v: dict) -> DefectionPattern:
    name = v["pattern"]
    fixed = {
        "grim": GRIM_PATH,
        "tft-single": TFT_SINGLE,
        "tft-alternating": TFT_ALTERNATING,
        "one-time-grim": ONE_TIME_GRIM_PATH,
    }
    if name in fixed:
        return fixed[name]
    if v["k"] is None:
        raise UsageError("pattern tft-k requires --k")
    return tft_k_rounds(v["k"])


def _pattern_timing(pattern_name: str, v: dict) -> CostTiming:
    if pattern_name == "one-time-grim":
        return CostTiming.ONE_TIME_FIXED
    return _TIMINGS[v["cost-timing"]]


def _jsonable(obj):
    """Reduce dataclass trees, enums, and numpy values to JSON types."""
    from dataclasses import fields, is_dataclass

    if is_dataclass(obj) and not isinstance(obj, type):
        return {f.name: _jsonable(getattr(obj, f.name)) for f in fields(obj)}
    if isinstance(obj, Enum):
        return obj.value
    if isinstance(obj, np.ndarray):
        return [_jsonable(x) for x in obj.tolist()]
    if isinstance(obj, (np.floating,)):
        return float(obj)
    if isinstance(obj, (np.bool_,)):
        return bool(obj)
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (list, tuple)):
        return [_jsonable(x) for x in obj]
    if isinstance(obj, dict):
        return {k: _jsonable(v) for k, v in obj.items()}
    return obj


def _scalar_csv(data: dict) -> tuple[list[str], list]:
    """Single-row CSV for flat result dicts; nested dicts get dotted keys."""
    header: list[str] = []
    row: list = []

    def add(prefix: str, value) -> None:
        if isinstance(value, dict):
            for k, v in value.items():
                add(f"{prefix}.{k}" if prefix else k, v)
        elif isinstance(value, (list, tuple)):
            if value and all(isinstance(x, (int, float)) for x in value):
                for i, x in enumerate(value, start=1):
                    add(f"{prefix}.{i}", x)
            else:
                header.append(prefix)
                row.append(";".join(str(x) for x in value))
        else:
            header.append(prefix)
            row.append("" if value is None else value)

    add("", data)
    return header, [row]


# ---------------------------------------------------------------------------
# Subcommand implementations


def _cmd_payoffs(v: dict) -> CommandOutput:
    if v["cost2"] is not None and v["p2"] is None:
        raise UsageError("--cost2 requires --p2")
    if v["p2"] is not None:
        cost1 = _cost_model(v)
        cost2 = (
            _cost_model(v, "cost2", "cost2-exponent")
            if v["cost2"] is not None
            else cost1
        )
        pr1 = PlayerProfile(p=v["p"], cost=cost1)
        pr2 = PlayerProfile(p=v["p2"], cost=cost2)
        m1, m2 = stage_payoffs_asymmetric(pr1, pr2, v["beta"])
        data = {"player1": _jsonable(m1), "player2": _jsonable(m2)}
        header = ["player", "R", "T", "S", "Q"]
        rows = [[1, m1.R, m1.T, m1.S, m1.Q], [2, m2.R, m2.T, m2.S, m2.Q]]
        return CommandOutput(data=data, csv_header=header, csv_rows=rows)
    params = GameParams(
        p=v["p"], cost=_cost_model(v), beta=v["beta"], cost_timing=_TIMINGS[v["cost-timing"]]
    )
    m = stage_payoffs(params)
    data = _jsonable(m)
    header, rows = _scalar_csv(data)
    return CommandOutput(data=data, csv_header=header, csv_rows=rows)


def _cmd_ordering(v: dict) -> CommandOutput:
    params = GameParams(p=v["p"], cost=_cost_model(v), beta=v["beta"])
    matrix = stage_payoffs(params)
    report = check_pd_ordering(matrix, params)
    data = _jsonable(report)
    data["payoffs"] = _jsonable(matrix)
    header, rows = _scalar_csv(data)
    return CommandOutput(data=data, csv_header=header, csv_rows=rows)


def _cmd_threshold(v: dict) -> CommandOutput:
    strategy = v["strategy"]
    cost = _cost_model(v)
    if strategy == "tft-k":
        if v["delta"] is None:
            raise UsageError("--strategy tft-k requires --delta")
        params = GameParams(p=v["p"], cost=cost, beta=v["beta"])
        data = _jsonable(tft_k_classify(params, v["delta"]))
    elif strategy == "asym":
        if v["p2"] is None:
            raise UsageError("--strategy asym requires --p2")
        cost2 = (
            _cost_model(v, "cost2", "cost2-exponent") if v["cost2"] is not None else cost
        )
        pr1 = PlayerProfile(p=v["p"], cost=cost, delta=v["delta1"])
        pr2 = PlayerProfile(p=v["p2"], cost=cost2, delta=v["delta2"])
        report = thresholds_asymmetric(
            pr1, pr2, v["beta"], _MULTI_STRATEGIES[v["asym-strategy"]]
        )
        data = _jsonable(report)
    elif strategy == "one-time":
        params = GameParams(
            p=v["p"], cost=cost, beta=v["beta"], cost_timing=CostTiming.ONE_TIME_FIXED
        )
        data = _jsonable(delta_star_one_time(params))
    else:
        params = GameParams(
            p=v["p"], cost=cost, beta=v["beta"], cost_timing=_TIMINGS[v["cost-timing"]]
        )
        fn = delta_star_grim if strategy == "grim" else delta_star_tft
        data = _jsonable(fn(params))
    header, rows = _scalar_csv(data)
    return CommandOutput(data=data, csv_header=header, csv_rows=rows)


def _cmd_curves(v: dict) -> CommandOutput:
    pattern = _pattern(v)
    template = GameParams(
        p=0.0,
        cost=_cost_model(v),
        beta=v["beta"],
        cost_timing=_pattern_timing(v["pattern"], v),
    )
    if v["p-points"] < 2:
        raise UsageError("--p-points must be at least 2")
    grid = np.linspace(v["p-min"], v["p-max"], v["p-points"])
    samples = defection_curve(template, v["delta"], grid, pattern)
    data = [_jsonable(s) for s in samples]
    rows = [[s.p, s.v_c, s.v_d, s.gap] for s in samples]
    return CommandOutput(
        data=data, csv_header=["p", "v_c", "v_d", "gap"], csv_rows=rows,
        svg=svg_curves(samples),
    )


def _cmd_futile(v: dict) -> CommandOutput:
    pattern = _pattern(v)
    template = GameParams(
        p=0.0,
        cost=_cost_model(v),
        beta=v["beta"],
        cost_timing=_pattern_timing(v["pattern"], v),
    )
    report = futile_defense(template, v["delta"], pattern)
    data = _jsonable(report)
    header, rows = _scalar_csv(data)
    return CommandOutput(data=data, csv_header=header, csv_rows=rows)


def _cmd_region(v: dict) -> CommandOutput:
    spec = SweepSpec(
        strategy=_SWEEP_STRATEGIES[v["strategy"]],
        cost=_cost_model(v),
        beta=v["beta"],
        p_axis=(v["p-min"], v["p-max"], v["p-points"]),
        delta_axis=(v["delta-min"], v["delta-max"], v["delta-points"]),
    )
    grid = region_sweep(spec)
    boundary = boundary_extract(grid)
    data = {
        "p": [float(x) for x in grid.p_values],
        "delta": [float(x) for x in grid.delta_values],
        "delta_star": [float(x) for x in grid.delta_star_row],
        "regimes": [r.value for r in grid.regimes],
        "boundary": [_jsonable(b) for b in boundary],
        "area": region_area(grid),
        "cells": [[int(c) for c in row] for row in grid.cells],
    }
    rows = [
        [p, d, bool(grid.cells[i, j])]
        for i, p in enumerate(data["p"])
        for j, d in enumerate(data["delta"])
    ]
    return CommandOutput(
        data=data, csv_header=["p", "delta", "cooperate"], csv_rows=rows,
        svg=svg_region(grid),
    )


def _cmd_multi(v: dict) -> CommandOutput:
    params = MultiParams(
        n=v["n"], m=v["m"], p=v["p"], cost=_cost_model(v), beta=v["beta"],
        mode=_SHARE_MODES[v["mode"]],
    )
    payoffs = multi_stage_payoffs(params)
    report = multi_delta_star(params, _MULTI_STRATEGIES[v["strategy"]])
    gap = mode_discrepancy(params)
    data = {
        "R": payoffs.R, "T": payoffs.T, "S": payoffs.S, "Q": payoffs.Q,
        "mode": payoffs.mode.value,
        "delta_star": report.delta_star,
        "regime": report.regime.value,
        "mode_gap": {
            "t_gap": gap.t_gap, "q_gap": gap.q_gap,
            "max_abs_gap": gap.max_abs_gap, "significant": gap.significant,
        },
    }
    header, rows = _scalar_csv(data)
    return CommandOutput(data=data, csv_header=header, csv_rows=rows)


def _cmd_multi_trend(v: dict) -> CommandOutput:
    report = multi_trend(
        n=v["n"], p=v["p"], cost=_cost_model(v), beta=v["beta"],
        strategy=_MULTI_STRATEGIES[v["strategy"]], mode=_SHARE_MODES[v["mode"]],
    )
    data = {
        "n": report.n,
        "strategy": report.strategy.value,
        "points": [{"m": m, "delta_star": d} for m, d in report.points],
        "tail_monotone_decreasing": report.tail_monotone_decreasing,
    }
    rows = [[m, d] for m, d in report.points]
    return CommandOutput(data=data, csv_header=["m", "delta_star"], csv_rows=rows)


def _cmd_simulate(v: dict) -> CommandOutput:
    for key in ("s1", "s2"):
        try:
            make_automaton(v[key])
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    params = GameParams(
        p=v["p"], cost=_cost_model(v), beta=v["beta"],
        cost_timing=_TIMINGS[v["cost-timing"]],
    )
    config = SimConfig(
        params=params, delta=v["delta"], episodes=v["episodes"], master_seed=v["seed"]
    )
    report = estimate_values(make_automaton(v["s1"]), make_automaton(v["s2"]), config)
    data = _jsonable(report)
    header, rows = _scalar_csv(data)
    return CommandOutput(data=data, csv_header=header, csv_rows=rows, seed=v["seed"])


# ---------------------------------------------------------------------------
# Command table

_P_FLAG = Flag("p", float, required=True, help="attack success probability")
_DELTA_FLAG = Flag("delta", float, required=True, help="discount factor")

COMMANDS: dict[str, tuple[list[Flag], Callable[[dict], CommandOutput]]] = {
    "payoffs": (
        [
            _P_FLAG, *_COST_FLAGS, _BETA_FLAG, _TIMING_FLAG,
            Flag("p2", float, help="second player's success probability (asymmetric)"),
            Flag("cost2", float, help="second player's cost coefficient"),
            Flag("cost2-exponent", float, default=0.0, help="second player's cost exponent"),
        ],
        _cmd_payoffs,
    ),
    "ordering": ([_P_FLAG, *_COST_FLAGS, _BETA_FLAG], _cmd_ordering),
    "threshold": (
        [
            Flag("strategy", str, default="grim",
                 choices=("grim", "tft", "tft-k", "one-time", "asym"),
                 help="punishment strategy backing the threshold"),
            _P_FLAG, *_COST_FLAGS, _BETA_FLAG, _TIMING_FLAG,
            Flag("delta", float, help="patience, needed by tft-k"),
            Flag("p2", float, help="second player's success probability (asym)"),
            Flag("cost2", float, help="second player's cost coefficient (asym)"),
            Flag("cost2-exponent", float, default=0.0, help="second player's cost exponent"),
            Flag("delta1", float, default=0.0, help="player 1 patience (asym)"),
            Flag("delta2", float, default=0.0, help="player 2 patience (asym)"),
            Flag("asym-strategy", str, default="grim", choices=("grim", "tft"),
                 help="underlying strategy for asym thresholds"),
        ],
        _cmd_threshold,
    ),
    "curves": (
        [
            Flag("pattern", str, default="grim", choices=_PATTERN_CHOICES,
                 help="defection path to evaluate"),
            Flag("k", int, help="retaliation rounds for pattern tft-k"),
            *_COST_FLAGS, _BETA_FLAG, _TIMING_FLAG, _DELTA_FLAG,
            Flag("p-min", float, default=0.0), Flag("p-max", float, default=1.0),
            Flag("p-points", int, default=101),
        ],
        _cmd_curves,
    ),
    "futile": (
        [
            Flag("pattern", str, default="grim", choices=_PATTERN_CHOICES),
            Flag("k", int, help="retaliation rounds for pattern tft-k"),
            *_COST_FLAGS, _BETA_FLAG, _TIMING_FLAG, _DELTA_FLAG,
        ],
        _cmd_futile,
    ),
    "region": (
        [
            Flag("strategy", str, default="grim", choices=("grim", "tft", "one-time-grim")),
            *_COST_FLAGS, _BETA_FLAG,
            Flag("p-min", float, default=0.0), Flag("p-max", float, default=1.0),
            Flag("p-points", int, default=401),
            Flag("delta-min", float, default=0.0), Flag("delta-max", float, default=1.0),
            Flag("delta-points", int, default=401),
        ],
        _cmd_region,
    ),
    "multi": (
        [
            Flag("n", int, required=True, help="number of providers"),
            Flag("m", int, required=True, help="number of attackers"),
            _P_FLAG, *_COST_FLAGS, _BETA_FLAG,
            Flag("mode", str, default="as-written", choices=("as-written", "per-player")),
            Flag("strategy", str, default="grim", choices=("grim", "tft")),
        ],
        _cmd_multi,
    ),
    "multi-trend": (
        [
            Flag("n", int, required=True, help="number of providers"),
            _P_FLAG, *_COST_FLAGS, _BETA_FLAG,
            Flag("mode", str, default="as-written", choices=("as-written", "per-player")),
            Flag("strategy", str, default="grim", choices=("grim", "tft")),
        ],
        _cmd_multi_trend,
    ),
    "simulate": (
        [
            Flag("s1", str, required=True, help="player 1 strategy automaton"),
            Flag("s2", str, required=True, help="player 2 strategy automaton"),
            _P_FLAG, *_COST_FLAGS, _BETA_FLAG, _TIMING_FLAG, _DELTA_FLAG,
            Flag("episodes", int, default=10000, help="Monte Carlo episodes"),
            Flag("seed", int, default=DEFAULT_SEED, help="master seed (default 0)"),
        ],
        _cmd_simulate,
    ),
}

_IO_FLAGS = [
    Flag("out", str, default="-", help="output path, - for stdout"),
    Flag("format", str, default="json", choices=("csv", "json", "svg")),
]


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ranklash",
        description="Repeated-game analysis of ranking-manipulation incentives.",
    )
    parser.add_argument("--version", action="version", version=f"ranklash {__version__}")
    subparsers = parser.add_subparsers(dest="command", required=True)
    for name, (flags, _) in COMMANDS.items():
        sub = subparsers.add_parser(name)
        for flag in flags + _IO_FLAGS:
            sub.add_argument(f"--{flag.name}", dest=flag.name, type=str, help=flag.help)
        sub.add_argument("--config", dest="config", type=str,
                         help="key = value file with flag defaults")
    return parser


def _convert(flag: Flag, raw: str):
    try:
        value = flag.convert(raw)
    except (TypeError, ValueError):
        raise UsageError(
            f"--{flag.name}: expected {flag.convert.__name__}, got {raw!r}"
        ) from None
    if flag.choices and value not in flag.choices:
        options = ", ".join(flag.choices)
        raise UsageError(f"--{flag.name}: must be one of {options}; got {raw!r}")
    return value


def _load_config(path: str) -> dict[str, str]:
    try:
        with open(path, encoding="utf-8") as handle:
            text = handle.read()
    except OSError as exc:
        raise UsageError(f"cannot read config file: {exc}") from None
    entries: dict[str, str] = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise UsageError(f"{path}:{lineno}: expected 'key = value'")
        key, _, value = line.partition("=")
        entries[key.strip()] = value.strip()
    return entries


def _merge_values(args: argparse.Namespace, flags: list[Flag]) -> dict:
    """Resolve each flag from CLI, then config file, then default."""
    config = _load_config(args.config) if args.config else {}
    by_name = {f.name: f for f in flags + _IO_FLAGS}
    for key in config:
        if key not in by_name:
            raise UsageError(f"unknown config key {key!r}")
    values: dict = {}
    for flag in flags + _IO_FLAGS:
        raw_cli = getattr(args, flag.name, None)
        if raw_cli is not None:
            values[flag.name] = _convert(flag, raw_cli)
        elif flag.name in config:
            values[flag.name] = _convert(flag, config[flag.name])
        else:
            if flag.required:
                raise UsageError(f"missing required option --{flag.name}")
            values[flag.name] = flag.default
    return values


def _meta(command: str, values: dict, seed: int | None) -> dict:
    params = {
        k: v
        for k, v in values.items()
        if k not in ("out", "format") and v is not None
    }
    return {
        "tool": "ranklash",
        "version": __version__,
        "command": command,
        "seed": seed,
        "params": params,
    }


def _run(argv: list[str]) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    flags, runner = COMMANDS[args.command]
    values = _merge_values(args, flags)
    output = runner(values)
    fmt = values["format"]
    if fmt == "json":
        text = render_json(_meta(args.command, values, output.seed), _jsonable(output.data))
    elif fmt == "csv":
        text = render_csv(output.csv_header, output.csv_rows)
    else:
        if output.svg is None:
            raise UsageError(f"svg output is not defined for the {args.command} command")
        text = output.svg
    write_text(values["out"], text)
    return 0


def run_cli(argv: list[str]) -> int:
    """Run one invocation; returns the process exit code."""
    try:
        return _run(argv)
    except SystemExit as exc:
        code = exc.code
        return code if isinstance(code, int) else (0 if code is None else 2)
    except UsageError as exc:
        print(f"ranklash: usage error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, RuntimeError) as exc:
        print(f"ranklash: domain error: {exc}", file=sys.stderr)
        return 3
    except OSError as exc:
        print(f"ranklash: output error: {exc}", file=sys.stderr)
        return 3


def main() -> None:
    sys.exit(run_cli(sys.argv[1:]))


if __name__ == "__main__":
    main()
