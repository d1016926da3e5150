"""Run configuration, orchestration, sweeps, and series serialization."""

from __future__ import annotations

import json
import math
import warnings
from dataclasses import dataclass, fields, replace
from typing import IO, Sequence

from .dynamics import action_weights, judgement_weights
from .metrics import COLUMNS, MetricsRecord, Snapshot, metrics_record
from .scheduler import ScheduleConfig, Simulation
from .topology import build_tree
from .world import NoiseModel

SCHEMA_VERSION = 1

#: A run counts as converged once per-agent distance to the world drops here.
CONVERGENCE_THRESHOLD = 1e-6


class ConfigError(ValueError):
    """Malformed or out-of-domain configuration input."""


class SimulationAbort(RuntimeError):
    """A run hit a non-finite state and cannot continue."""

    def __init__(self, tick: int, message: str):
        super().__init__(f"tick {tick}: {message}")
        self.tick = tick


@dataclass(frozen=True, slots=True)
class SimConfig:
    """All run parameters; the defaults are the standard setup."""

    levels: int = 4
    theta: float = 0.1
    phi: float = 0.2
    sigma_scale: float = 1.0
    alpha_scale: float = 1.0
    eta: float = 1e-3
    psi: float = math.sqrt(2.0)
    epsilon: float = 0.0
    ratio: int = 3
    seed: int = 0
    world0: float = 3.0
    world_kind: str = "scalar"  # reserved for richer world models
    max_ticks: int | None = None  # None: ten full top-level cycles
    record_every: int = 1

    def resolved_max_ticks(self) -> int:
        if self.max_ticks is not None:
            return self.max_ticks
        return 10 * self.ratio**self.levels


_INT_KEYS = {"levels", "ratio", "seed", "max_ticks", "record_every"}
_FLOAT_KEYS = {
    "theta",
    "phi",
    "sigma_scale",
    "alpha_scale",
    "eta",
    "psi",
    "epsilon",
    "world0",
}
_STR_KEYS = {"world_kind"}
_ALL_KEYS = tuple(f.name for f in fields(SimConfig))


def validate_config(config: SimConfig) -> None:
    """Raise ConfigError naming the offending key, if any."""
    if config.levels < 1:
        raise ConfigError(f"levels must be >= 1, got {config.levels}")
    if config.ratio < 2:
        raise ConfigError(f"ratio must be >= 2, got {config.ratio}")
    if not 0 <= config.seed < 1 << 64:
        raise ConfigError(f"seed must be in [0, 2**64), got {config.seed}")
    if not (math.isfinite(config.eta) and config.eta >= 0.0):
        raise ConfigError(f"eta must be finite and >= 0, got {config.eta!r}")
    if not (math.isfinite(config.psi) and config.psi > 0.0):
        raise ConfigError(f"psi must be finite and > 0, got {config.psi!r}")
    for key in ("theta", "phi", "sigma_scale", "alpha_scale", "epsilon", "world0"):
        value = getattr(config, key)
        if not math.isfinite(value):
            raise ConfigError(f"{key} must be finite, got {value!r}")
    if config.max_ticks is not None and config.max_ticks < 1:
        raise ConfigError(f"max_ticks must be >= 1, got {config.max_ticks}")
    if config.record_every < 1:
        raise ConfigError(f"record_every must be >= 1, got {config.record_every}")
    if config.world_kind != "scalar":
        raise ConfigError(
            f"world_kind {config.world_kind!r} is not supported (only 'scalar')"
        )


def _warn_on_unusual(config: SimConfig) -> None:
    if not 0.0 <= config.theta <= 1.0 / 3.0:
        warnings.warn(
            f"theta = {config.theta!r} is outside [0, 1/3]; judging weights "
            "leave the usual blending regime",
            stacklevel=3,
        )
    if not 0.0 <= config.phi <= 1.0:
        warnings.warn(
            f"phi = {config.phi!r} is outside [0, 1]; acting weights leave "
            "the usual blending regime",
            stacklevel=3,
        )


def _parse_scalar(key: str, text: str) -> int | float | str:
    if key in _STR_KEYS:
        return text
    if key in _INT_KEYS:
        try:
            return int(text)
        except ValueError:
            raise ConfigError(f"key {key!r} expects an integer, got {text!r}") from None
    try:
        value = float(text)
    except ValueError:
        raise ConfigError(f"key {key!r} expects a number, got {text!r}") from None
    if not math.isfinite(value):
        raise ConfigError(f"key {key!r} must be finite, got {text!r}")
    return value


def parse_config(text: str) -> SimConfig:
    """Parse a flat ``key = value`` document into a SimConfig.

    Blank lines and ``#`` comments are ignored; unknown or repeated keys
    are errors.  Values for keys not present fall back to the defaults.
    """
    seen: dict[str, int | float | str] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value_text = line.partition("=")
        if not sep:
            raise ConfigError(f"line {lineno}: expected 'key = value', got {raw!r}")
        key = key.strip()
        value_text = value_text.strip()
        if key not in _ALL_KEYS:
            raise ConfigError(f"line {lineno}: unknown key {key!r}")
        if key in seen:
            raise ConfigError(f"line {lineno}: key {key!r} given twice")
        if not value_text:
            raise ConfigError(f"line {lineno}: key {key!r} has no value")
        seen[key] = _parse_scalar(key, value_text)
    config = SimConfig(**seen)
    validate_config(config)
    _warn_on_unusual(config)
    return config


def apply_overrides(config: SimConfig, pairs: Sequence[str]) -> SimConfig:
    """Apply ``key=value`` override strings, revalidating the result."""
    updates: dict[str, int | float | str] = {}
    for pair in pairs:
        key, sep, value_text = pair.partition("=")
        key = key.strip()
        value_text = value_text.strip()
        if not sep or not key or not value_text:
            raise ConfigError(f"override {pair!r} is not of the form key=value")
        if key not in _ALL_KEYS:
            raise ConfigError(f"override names unknown key {key!r}")
        updates[key] = _parse_scalar(key, value_text)
    updated = replace(config, **updates)
    validate_config(updated)
    _warn_on_unusual(updated)
    return updated


def serialize_config(config: SimConfig) -> str:
    """Render a config as a ``key = value`` document that parses back equal."""
    lines = []
    for f in fields(config):
        value = getattr(config, f.name)
        if value is None:
            continue  # absent key means "derive the default"
        rendered = value if isinstance(value, str) else repr(value)
        lines.append(f"{f.name} = {rendered}")
    return "\n".join(lines) + "\n"


def config_as_dict(config: SimConfig) -> dict:
    return {f.name: getattr(config, f.name) for f in fields(config)}


def build_simulation(config: SimConfig, step_listener=None) -> Simulation:
    """Assemble the zero-initialized simulation a config describes."""
    validate_config(config)
    tree = build_tree(config.levels)
    schedule = ScheduleConfig(levels=config.levels, ratio=config.ratio)
    sigma = judgement_weights(config.theta).scaled(config.sigma_scale)
    alpha = action_weights(config.phi).scaled(config.alpha_scale)
    noise = NoiseModel(eta=config.eta, psi=config.psi, seed=config.seed)
    return Simulation(
        tree=tree,
        schedule=schedule,
        sigma=sigma,
        alpha=alpha,
        noise=noise,
        world0=config.world0,
        epsilon=config.epsilon,
        step_listener=step_listener,
    )


def _check_finite(record: MetricsRecord) -> None:
    for value in record.as_row()[1:]:
        if not math.isfinite(value):
            raise SimulationAbort(record.tick, "simulation state is no longer finite")


def run(config: SimConfig, step_listener=None) -> list[MetricsRecord]:
    """Execute one run, returning the recorded time series.

    Record r covers the state after tick r * record_every has executed.
    Escalating (non-conservative) setups that blow up raise
    SimulationAbort naming the first bad tick.
    """
    sim = build_simulation(config, step_listener=step_listener)
    schedule = sim.schedule
    initial_world = sim.world.initial_value
    records: list[MetricsRecord] = []
    for tick in range(config.resolved_max_ticks()):
        try:
            sim.advance_tick()
        except ValueError as exc:
            # mid-tick finiteness failures surface here (overflow feedback)
            raise SimulationAbort(tick, str(exc)) from exc
        if tick % config.record_every == 0:
            snapshot = Snapshot(
                tick=tick, world_value=sim.world.value, states=tuple(sim.states)
            )
            record = metrics_record(snapshot, schedule, initial_world)
            _check_finite(record)
            records.append(record)
    return records


def _format_value(value) -> str:
    if isinstance(value, int):
        return str(value)
    return format(value, ".17g")


def write_series(records: Sequence[MetricsRecord], sink: IO[str]) -> None:
    """Write records as CSV: schema comment, header, one line per record.

    The byte stream is a pure function of the records: fixed column
    order, floats via repr-exact '%.17g', '\\n' endings.
    """
    sink.write(f"# schema_version={SCHEMA_VERSION}\n")
    sink.write(",".join(COLUMNS) + "\n")
    for record in records:
        sink.write(",".join(_format_value(v) for v in record.as_row()) + "\n")


def write_series_jsonl(
    records: Sequence[MetricsRecord], sink: IO[str], config: SimConfig | None = None
) -> None:
    """Structured variant: a header object, then one object per record."""
    header: dict = {"schema_version": SCHEMA_VERSION}
    if config is not None:
        header["config"] = config_as_dict(config)
    sink.write(json.dumps(header, sort_keys=True) + "\n")
    for record in records:
        sink.write(json.dumps(dict(zip(COLUMNS, record.as_row())), sort_keys=True) + "\n")


@dataclass(frozen=True, slots=True)
class SweepPoint:
    """Summary of one run inside a sweep."""

    value: float
    final: MetricsRecord
    convergence_tick: int | None  # first recorded tick with x_abs_pa below threshold
    records: tuple[MetricsRecord, ...] | None = None  # full series, on request


_SWEEPABLE = set(_INT_KEYS | _FLOAT_KEYS) - {"max_ticks", "record_every"}


def sweep(
    base: SimConfig, axis: str, values: Sequence[float], keep_series: bool = False
) -> list[tuple[SimConfig, SweepPoint]]:
    """Run once per axis value against an otherwise fixed base config."""
    if axis not in _SWEEPABLE:
        raise ConfigError(f"cannot sweep over key {axis!r}")
    if not values:
        raise ConfigError("sweep needs at least one value")
    out: list[tuple[SimConfig, SweepPoint]] = []
    for value in values:
        if axis in _INT_KEYS:
            if float(value) != int(value):
                raise ConfigError(f"key {axis!r} expects an integer, got {value!r}")
            value = int(value)
        config = replace(base, **{axis: value})
        validate_config(config)
        records = run(config)
        convergence = next(
            (r.tick for r in records if r.x_abs_pa < CONVERGENCE_THRESHOLD), None
        )
        point = SweepPoint(
            value=value,
            final=records[-1],
            convergence_tick=convergence,
            records=tuple(records) if keep_series else None,
        )
        out.append((config, point))
    return out
