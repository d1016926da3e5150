"""Success metrics: squared distance of actions from six reference values.

Each metric answers "a good action should have matched what?" with a
different reference: the agent's own observation, the true world value,
its own judgement, its parent's collected judgement, the top agent's
judgement, or the tree-wide mean judgement.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .dynamics import AgentState
from .scheduler import ScheduleConfig


class MetricKind(Enum):
    """The six competing definitions of a successful action."""

    NAIVE = "naive"  # vs own observation
    ABSOLUTE = "abs"  # vs true world value
    PERCEIVED = "perc"  # vs own judgement
    BOOTLICKER = "boot"  # vs collected parent judgement
    AUTHORITARIAN = "auth"  # vs the top agent's judgement
    DEMOCRATIC = "demo"  # vs mean judgement over the tree

    @property
    def column(self) -> str:
        return f"x_{self.value}"


#: Output row layout, fixed; "_pa" columns are per-agent means.
COLUMNS = (
    "tick",
    "t_norm",
    "world",
    "delta_world",
    "x_naive",
    "x_abs",
    "x_perc",
    "x_boot",
    "x_auth",
    "x_demo",
    "x_naive_pa",
    "x_abs_pa",
    "x_perc_pa",
    "x_boot_pa",
    "x_auth_pa",
    "x_demo_pa",
)


@dataclass(frozen=True, slots=True)
class Snapshot:
    """All agent states plus the world value at the end of one tick."""

    tick: int
    world_value: float
    states: tuple[AgentState, ...]


def _mean_judgement(states: tuple[AgentState, ...]) -> float:
    return sum(s.judgement for s in states) / len(states)


def reference_value(snapshot: Snapshot, kind: MetricKind, agent: int) -> float:
    """The reference the given agent's action is scored against."""
    states = snapshot.states
    if not 0 <= agent < len(states):
        raise ValueError(f"agent index {agent} out of range [0, {len(states)})")
    s = states[agent]
    if kind is MetricKind.NAIVE:
        return s.observation
    if kind is MetricKind.ABSOLUTE:
        return snapshot.world_value
    if kind is MetricKind.PERCEIVED:
        return s.judgement
    if kind is MetricKind.BOOTLICKER:
        return s.parent_judgement
    if kind is MetricKind.AUTHORITARIAN:
        return states[0].judgement
    if kind is MetricKind.DEMOCRATIC:
        return _mean_judgement(states)
    raise ValueError(f"unknown metric kind: {kind!r}")


def success_metric(snapshot: Snapshot, kind: MetricKind) -> float:
    """Sum over agents of (action - reference)**2, ascending agent order."""
    states = snapshot.states
    if kind is MetricKind.NAIVE:
        return sum((s.action - s.observation) ** 2 for s in states)
    if kind is MetricKind.ABSOLUTE:
        w = snapshot.world_value
        return sum((s.action - w) ** 2 for s in states)
    if kind is MetricKind.PERCEIVED:
        return sum((s.action - s.judgement) ** 2 for s in states)
    if kind is MetricKind.BOOTLICKER:
        return sum((s.action - s.parent_judgement) ** 2 for s in states)
    if kind is MetricKind.AUTHORITARIAN:
        j_top = states[0].judgement
        return sum((s.action - j_top) ** 2 for s in states)
    if kind is MetricKind.DEMOCRATIC:
        j_mean = _mean_judgement(states)
        return sum((s.action - j_mean) ** 2 for s in states)
    raise ValueError(f"unknown metric kind: {kind!r}")


@dataclass(frozen=True, slots=True)
class MetricsRecord:
    """One recorded row of the output time series (COLUMNS order)."""

    tick: int
    t_norm: float
    world: float
    delta_world: float
    x_naive: float
    x_abs: float
    x_perc: float
    x_boot: float
    x_auth: float
    x_demo: float
    x_naive_pa: float
    x_abs_pa: float
    x_perc_pa: float
    x_boot_pa: float
    x_auth_pa: float
    x_demo_pa: float

    def as_row(self) -> tuple:
        return tuple(getattr(self, name) for name in COLUMNS)


def metrics_record(
    snapshot: Snapshot, schedule: ScheduleConfig, initial_world: float
) -> MetricsRecord:
    """Assemble one output row from a snapshot.

    t_norm rescales the tick by the top level's period, so one unit is a
    third of a full top-level cycle regardless of tree depth.
    """
    n = len(snapshot.states)
    totals = [success_metric(snapshot, kind) for kind in MetricKind]
    return MetricsRecord(
        snapshot.tick,
        snapshot.tick / schedule.period(0),
        snapshot.world_value,
        snapshot.world_value - initial_world,
        *totals,
        *(x / n for x in totals),
    )
