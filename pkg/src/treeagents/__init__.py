"""Deterministic simulator of hierarchical decision dynamics on a binary agent tree.

A tree of agents tracks a scalar world value.  Each agent cycles through
measure, judge, act; levels closer to the top step geometrically less
often and see geometrically less measurement noise, and acting agents
can optionally hammer the world toward their own actions.  Runs are
bit-reproducible from a single seed.
"""

from .dynamics import (
    AgentState,
    WeightVector,
    action_weights,
    judgement_weights,
    step_act,
    step_judge,
    step_measure,
    weighted_sum,
)
from .experiment import (
    ConfigError,
    SimConfig,
    SimulationAbort,
    SweepPoint,
    apply_overrides,
    build_simulation,
    parse_config,
    run,
    serialize_config,
    sweep,
    write_series,
    write_series_jsonl,
)
from .metrics import (
    COLUMNS,
    MetricKind,
    MetricsRecord,
    Snapshot,
    metrics_record,
    reference_value,
    success_metric,
)
from .scheduler import ScheduleConfig, Simulation, StepKind, is_due
from .topology import Tree, build_tree
from .world import NoiseModel, WorldState, apply_hammer, sample_noise

__version__ = "0.1.0"

__all__ = [
    "AgentState",
    "COLUMNS",
    "ConfigError",
    "MetricKind",
    "MetricsRecord",
    "NoiseModel",
    "ScheduleConfig",
    "SimConfig",
    "Simulation",
    "SimulationAbort",
    "Snapshot",
    "StepKind",
    "SweepPoint",
    "Tree",
    "WeightVector",
    "WorldState",
    "action_weights",
    "apply_hammer",
    "apply_overrides",
    "build_simulation",
    "build_tree",
    "is_due",
    "judgement_weights",
    "metrics_record",
    "parse_config",
    "reference_value",
    "run",
    "sample_noise",
    "serialize_config",
    "step_act",
    "step_judge",
    "step_measure",
    "success_metric",
    "sweep",
    "weighted_sum",
    "write_series",
    "write_series_jsonl",
]
