"""Scalar world state, level-scaled measurement noise, and action feedback."""

from __future__ import annotations

import math
from dataclasses import dataclass

_MASK64 = (1 << 64) - 1
_GAMMA = 0x9E3779B97F4A7C15  # splitmix64 stream increment


def _mix64(x: int) -> int:
    # splitmix64 output scrambler (Steele/Lea/Flood constants)
    x &= _MASK64
    x = ((x ^ (x >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    x = ((x ^ (x >> 27)) * 0x94D049BB133111EB) & _MASK64
    return x ^ (x >> 31)


def _splitmix64(state: int) -> int:
    return _mix64((state + _GAMMA) & _MASK64)


@dataclass(frozen=True, slots=True)
class WorldState:
    """The scalar world value plus the value it started from."""

    value: float
    initial_value: float

    def __post_init__(self) -> None:
        for v in (self.value, self.initial_value):
            if not math.isfinite(v):
                raise ValueError(f"world value must be finite, got {v!r}")

    @property
    def delta(self) -> float:
        """Cumulative world change since the start of the run."""
        return self.value - self.initial_value


@dataclass(frozen=True, slots=True)
class NoiseModel:
    """Level-scaled uniform measurement noise on counter-based streams.

    A draw is a pure function of (seed, agent, draw_counter): each agent
    owns a splitmix64 substream indexed by its draw counter, so a replay
    reproduces identical noise no matter how steps interleave, and any
    draw can be recomputed without replaying the ones before it.
    """

    eta: float
    psi: float
    seed: int

    def __post_init__(self) -> None:
        if not (math.isfinite(self.eta) and self.eta >= 0.0):
            raise ValueError(f"eta must be finite and >= 0, got {self.eta!r}")
        if not (math.isfinite(self.psi) and self.psi > 0.0):
            raise ValueError(f"psi must be finite and > 0, got {self.psi!r}")
        if not 0 <= self.seed < 1 << 64:
            raise ValueError(f"seed must be in [0, 2**64), got {self.seed!r}")


def uniform_symmetric(model: NoiseModel, agent: int, draw_counter: int) -> float:
    """The raw variate xi in [-1, 1) for the given agent and counter."""
    if agent < 0:
        raise ValueError(f"agent index must be >= 0, got {agent}")
    if draw_counter < 0:
        raise ValueError(f"draw counter must be >= 0, got {draw_counter}")
    origin = _splitmix64(model.seed ^ _splitmix64(agent))
    u = _splitmix64((origin + draw_counter * _GAMMA) & _MASK64)
    # top 52 bits -> [0, 1), shifted to [-1, 1)
    return (u >> 11) * 2.0**-52 - 1.0


def sample_noise(model: NoiseModel, agent: int, level: int, draw_counter: int) -> float:
    """One noise term eta * psi**level * xi.

    The amplitude grows geometrically with depth, so agents far from the
    top measure through proportionally more distortion.
    """
    if level < 0:
        raise ValueError(f"level must be >= 0, got {level}")
    xi = uniform_symmetric(model, agent, draw_counter)
    return model.eta * model.psi**level * xi


def apply_hammer(
    world: WorldState, action: float, agent_count: int, epsilon: float
) -> WorldState:
    """Move the world toward ``action`` by epsilon/agent_count of the gap.

    One feedback blow per acting agent; epsilon = 0 returns the world
    object unchanged, bit for bit.
    """
    if agent_count < 1:
        raise ValueError(f"agent count must be >= 1, got {agent_count}")
    if not math.isfinite(epsilon):
        raise ValueError(f"epsilon must be finite, got {epsilon!r}")
    if not math.isfinite(action):
        raise ValueError(f"action must be finite, got {action!r}")
    if epsilon == 0.0:
        return world
    new_value = world.value + (epsilon / agent_count) * (action - world.value)
    return WorldState(value=new_value, initial_value=world.initial_value)
