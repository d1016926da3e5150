"""Multi-rate tick loop: level-dependent step cadence over the agent tree.

Each agent walks its private measure -> judge -> act cycle, one step per
due tick.  Higher levels step geometrically less often, so one full top
cycle spans many bottom cycles.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Callable, Iterable, Optional

from .dynamics import AgentState, WeightVector, step_act, step_judge, step_measure
from .topology import Tree
from .world import NoiseModel, WorldState, apply_hammer, sample_noise


class StepKind(Enum):
    MEASURE = "measure"
    JUDGE = "judge"
    ACT = "act"


_NEXT_STEP = {
    StepKind.MEASURE: StepKind.JUDGE,
    StepKind.JUDGE: StepKind.ACT,
    StepKind.ACT: StepKind.MEASURE,
}


@dataclass(frozen=True, slots=True)
class ScheduleConfig:
    """Per-level cadence: level l steps every ratio**(levels-1-l) ticks."""

    levels: int
    ratio: int = 3

    def __post_init__(self) -> None:
        if self.levels < 1:
            raise ValueError(f"levels must be >= 1, got {self.levels}")
        if self.ratio < 2:
            raise ValueError(f"ratio must be >= 2, got {self.ratio}")

    def period(self, level: int) -> int:
        """Tick period of ``level``; the bottom level's period is 1."""
        if not 0 <= level < self.levels:
            raise ValueError(f"level {level} out of range [0, {self.levels})")
        return self.ratio ** (self.levels - 1 - level)

    def top_cycle_ticks(self) -> int:
        """Ticks per full measure/judge/act cycle of the top agent."""
        return 3 * self.period(0)


def is_due(level: int, tick: int, schedule: ScheduleConfig) -> bool:
    """Whether agents at ``level`` take a step at ``tick``."""
    if tick < 0:
        raise ValueError(f"tick must be >= 0, got {tick}")
    return tick % schedule.period(level) == 0


@dataclass(slots=True)
class AgentCursor:
    """Where an agent stands in its personal three-step cycle."""

    next_step: StepKind = StepKind.MEASURE
    draws_taken: int = 0


#: Listener signature: (tick, agent index, step kind just executed).
StepListener = Callable[[int, int, StepKind], None]


class Simulation:
    """Mutable simulation advanced tick by tick.

    Within a tick, due levels run top-down and agents within a level in
    ascending index order.  Action feedback (epsilon != 0) lands on the
    world immediately, so later agents in the same tick see the updated
    value; the world history is one serial sequence.
    """

    def __init__(
        self,
        tree: Tree,
        schedule: ScheduleConfig,
        sigma: WeightVector,
        alpha: WeightVector,
        noise: NoiseModel,
        world0: float,
        epsilon: float = 0.0,
        initial_states: Optional[Iterable[AgentState]] = None,
        step_listener: Optional[StepListener] = None,
    ):
        if schedule.levels != tree.levels:
            raise ValueError(
                f"schedule levels {schedule.levels} != tree levels {tree.levels}"
            )
        self.tree = tree
        self.schedule = schedule
        self.sigma = sigma
        self.alpha = alpha
        self.noise = noise
        self.world = WorldState(value=world0, initial_value=world0)
        self.epsilon = epsilon
        if initial_states is None:
            states = [AgentState() for _ in range(tree.agent_count)]
        else:
            states = list(initial_states)
            if len(states) != tree.agent_count:
                raise ValueError(
                    f"expected {tree.agent_count} initial states, got {len(states)}"
                )
        self.states = states
        self.cursors = [AgentCursor() for _ in range(tree.agent_count)]
        self.tick = 0  # next tick to execute
        self.step_listener = step_listener

    def advance_tick(self) -> None:
        """Execute one global tick: one step for every agent at a due level."""
        tree = self.tree
        states = self.states
        tick = self.tick
        listener = self.step_listener
        for level in range(tree.levels):
            if not is_due(level, tick, self.schedule):
                continue
            for i in tree.agents_at_level(level):
                cursor = self.cursors[i]
                kind = cursor.next_step
                if kind is StepKind.MEASURE:
                    noise_value = sample_noise(self.noise, i, level, cursor.draws_taken)
                    cursor.draws_taken += 1
                    parent = tree.parent_of(i)
                    left, right = tree.children_of(i)
                    states[i] = step_measure(
                        states[i],
                        self.world.value,
                        noise_value,
                        states[parent].judgement,
                        states[left].judgement,
                        states[right].judgement,
                    )
                elif kind is StepKind.JUDGE:
                    states[i] = step_judge(states[i], self.sigma)
                else:
                    states[i] = step_act(states[i], self.alpha)
                    if self.epsilon != 0.0:
                        self.world = apply_hammer(
                            self.world, states[i].action, tree.agent_count, self.epsilon
                        )
                cursor.next_step = _NEXT_STEP[kind]
                if listener is not None:
                    listener(tick, i, kind)
        self.tick = tick + 1
