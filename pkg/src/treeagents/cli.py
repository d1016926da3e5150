"""Command line entry points: single runs, parameter sweeps, scenario batches."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .experiment import (
    ConfigError,
    SimConfig,
    SimulationAbort,
    apply_overrides,
    parse_config,
    run,
    sweep,
    write_series,
    write_series_jsonl,
)
from .metrics import MetricKind

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_ABORT = 2

#: The four standard regimes: measurement noise on/off, feedback on/off.
SCENARIOS = {
    "noiseless_nohammer": {"eta": "0", "epsilon": "0"},
    "noisy_nohammer": {"eta": "1e-3", "epsilon": "0"},
    "noiseless_hammer": {"eta": "0", "epsilon": "2e-3"},
    "noisy_hammer": {"eta": "1e-3", "epsilon": "2e-3"},
}
SCENARIO_LEVELS = (4, 6)


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="treeagents",
        description="Simulate hierarchical decision dynamics on a binary agent tree.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="execute one run and emit its time series")
    p_run.add_argument("--config", required=True, type=Path, help="key = value config file")
    p_run.add_argument(
        "--out",
        type=Path,
        default=None,
        help="output path (default stdout); a .jsonl suffix selects the structured format",
    )
    p_run.add_argument(
        "--set",
        dest="overrides",
        action="append",
        default=[],
        metavar="KEY=VALUE",
        help="override one config key (repeatable)",
    )

    p_sweep = sub.add_parser("sweep", help="run once per value of one config key")
    p_sweep.add_argument("--config", required=True, type=Path)
    p_sweep.add_argument("--axis", required=True, help="config key to vary")
    p_sweep.add_argument(
        "--values", required=True, help="comma-separated numbers, one run each"
    )
    p_sweep.add_argument(
        "--out-dir",
        type=Path,
        default=None,
        help="also write each run's full series into this directory",
    )

    p_scen = sub.add_parser(
        "scenarios", help="run the four standard regimes at depths 4 and 6"
    )
    p_scen.add_argument("--out-dir", required=True, type=Path)
    return parser


def _load_config(path: Path, overrides: list[str]) -> SimConfig:
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read config file {path}: {exc}") from exc
    config = parse_config(text)
    if overrides:
        config = apply_overrides(config, overrides)
    return config


def _cmd_run(args: argparse.Namespace) -> int:
    config = _load_config(args.config, args.overrides)
    records = run(config)
    if args.out is None:
        write_series(records, sys.stdout)
        return EXIT_OK
    with open(args.out, "w", encoding="utf-8", newline="") as sink:
        if args.out.suffix == ".jsonl":
            write_series_jsonl(records, sink, config=config)
        else:
            write_series(records, sink)
    return EXIT_OK


def _parse_values(text: str) -> list[float]:
    values = []
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        try:
            values.append(float(part))
        except ValueError:
            raise ConfigError(f"--values entry {part!r} is not a number") from None
    if not values:
        raise ConfigError("--values is empty")
    return values


def _cmd_sweep(args: argparse.Namespace) -> int:
    base = _load_config(args.config, [])
    values = _parse_values(args.values)
    keep = args.out_dir is not None
    results = sweep(base, args.axis, values, keep_series=keep)
    if keep:
        args.out_dir.mkdir(parents=True, exist_ok=True)
    print("axis,value,convergence_tick,final_delta_world,"
          + ",".join(f"final_{k.column}_pa" for k in MetricKind))
    for _, point in results:
        convergence = "" if point.convergence_tick is None else str(point.convergence_tick)
        finals = ",".join(
            format(getattr(point.final, f"{k.column}_pa"), ".17g") for k in MetricKind
        )
        print(
            f"{args.axis},{point.value!r},{convergence},"
            f"{point.final.delta_world:.17g},{finals}"
        )
        if keep:
            path = args.out_dir / f"{args.axis}_{point.value!r}.csv"
            with open(path, "w", encoding="utf-8", newline="") as sink:
                write_series(point.records, sink)
    return EXIT_OK


def _cmd_scenarios(args: argparse.Namespace) -> int:
    args.out_dir.mkdir(parents=True, exist_ok=True)
    base = SimConfig()
    for name, params in SCENARIOS.items():
        for levels in SCENARIO_LEVELS:
            pairs = [f"{k}={v}" for k, v in params.items()] + [f"levels={levels}"]
            config = apply_overrides(base, pairs)
            records = run(config)
            path = args.out_dir / f"{name}_L{levels}.csv"
            with open(path, "w", encoding="utf-8", newline="") as sink:
                write_series(records, sink)
            print(f"wrote {path}")
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    handlers = {"run": _cmd_run, "sweep": _cmd_sweep, "scenarios": _cmd_scenarios}
    try:
        return handlers[args.command](args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except SimulationAbort as exc:
        print(f"aborted: {exc}", file=sys.stderr)
        return EXIT_ABORT
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
