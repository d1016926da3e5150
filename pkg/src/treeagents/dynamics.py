"""Agent state and the measure / judge / act step functions.

An agent's state is a six-vector: its world observation, its own
judgement and action, and the judgements it last collected from its
parent and two children.  Judging and acting replace one field with a
weighted sum over the whole vector.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

#: Absolute tolerance on "weights sum to one" for the conservative flag.
CONSERVATIVE_TOL = 1e-12


@dataclass(frozen=True, slots=True)
class AgentState:
    """One agent's local state.

    Field order is the weight-vector contract: (observation, judgement,
    action, parent_judgement, left_judgement, right_judgement).  The
    three neighbour judgements are values captured at the agent's last
    measurement step, not live views of the neighbours.
    """

    observation: float = 0.0
    judgement: float = 0.0
    action: float = 0.0
    parent_judgement: float = 0.0
    left_judgement: float = 0.0
    right_judgement: float = 0.0

    def as_tuple(self) -> tuple[float, float, float, float, float, float]:
        return (
            self.observation,
            self.judgement,
            self.action,
            self.parent_judgement,
            self.left_judgement,
            self.right_judgement,
        )


@dataclass(frozen=True, slots=True)
class WeightVector:
    """Six weights aligned with the AgentState field order."""

    observation: float
    judgement: float
    action: float
    parent_judgement: float
    left_judgement: float
    right_judgement: float

    def __post_init__(self) -> None:
        for name, value in zip(self.__slots__, self.as_tuple()):
            if not math.isfinite(value):
                raise ValueError(f"weight {name} must be finite, got {value!r}")

    def as_tuple(self) -> tuple[float, float, float, float, float, float]:
        return (
            self.observation,
            self.judgement,
            self.action,
            self.parent_judgement,
            self.left_judgement,
            self.right_judgement,
        )

    @property
    def is_conservative(self) -> bool:
        """True when the entries sum to one within CONSERVATIVE_TOL."""
        return abs(sum(self.as_tuple()) - 1.0) <= CONSERVATIVE_TOL

    def scaled(self, factor: float) -> WeightVector:
        """The vector with every entry multiplied by ``factor``."""
        if not math.isfinite(factor):
            raise ValueError(f"scale factor must be finite, got {factor!r}")
        return WeightVector(*(w * factor for w in self.as_tuple()))


def judgement_weights(theta: float) -> WeightVector:
    """Judging weights (1-3*theta, 0, 0, theta, theta, theta).

    Blends the agent's own observation with the three collected
    neighbour judgements; conservative for any theta.
    """
    if not math.isfinite(theta):
        raise ValueError(f"theta must be finite, got {theta!r}")
    return WeightVector(1.0 - 3.0 * theta, 0.0, 0.0, theta, theta, theta)


def action_weights(phi: float) -> WeightVector:
    """Acting weights (0, phi, 0, 1-phi, 0, 0).

    Blends the agent's own judgement with the collected parent
    judgement; conservative for any phi.
    """
    if not math.isfinite(phi):
        raise ValueError(f"phi must be finite, got {phi!r}")
    return WeightVector(0.0, phi, 0.0, 1.0 - phi, 0.0, 0.0)


def _dominant_index(weights: tuple[float, ...]) -> int:
    best = 0
    best_mag = abs(weights[0])
    for k in range(1, len(weights)):
        mag = abs(weights[k])
        if mag > best_mag:
            best = k
            best_mag = mag
    return best


def weighted_sum(state: AgentState, weights: WeightVector) -> float:
    """Weighted sum of the state vector under the given weights.

    Conservative vectors are evaluated anchored at the dominant-weight
    field, mu + sum(w_k * (s_k - mu)), so that an all-equal state comes
    back bit-exactly; the plain left-to-right dot product rounds
    0.2*3 + 0.8*3 up to 3.0000000000000004.  Non-conservative vectors
    use the plain dot product.
    """
    s = state.as_tuple()
    w = weights.as_tuple()
    if weights.is_conservative:
        mu = s[_dominant_index(w)]
        acc = 0.0
        for wk, sk in zip(w, s):
            acc += wk * (sk - mu)
        return mu + acc
    acc = 0.0
    for wk, sk in zip(w, s):
        acc += wk * sk
    return acc


def step_measure(
    state: AgentState,
    world_value: float,
    noise: float,
    parent_judgement: float,
    left_judgement: float,
    right_judgement: float,
) -> AgentState:
    """Measurement step: observe the world and collect neighbour judgements.

    The observation becomes ``world_value + noise``; the three collected
    judgements are copied exactly.  Own judgement and action are kept.
    """
    for value in (world_value, noise, parent_judgement, left_judgement, right_judgement):
        if not math.isfinite(value):
            raise ValueError(f"measurement input must be finite, got {value!r}")
    return AgentState(
        observation=world_value + noise,
        judgement=state.judgement,
        action=state.action,
        parent_judgement=parent_judgement,
        left_judgement=left_judgement,
        right_judgement=right_judgement,
    )


def step_judge(state: AgentState, weights: WeightVector) -> AgentState:
    """Judgement step: replace the judgement with the weighted sum."""
    return replace(state, judgement=weighted_sum(state, weights))


def step_act(state: AgentState, weights: WeightVector) -> AgentState:
    """Action step: replace the action with the weighted sum."""
    return replace(state, action=weighted_sum(state, weights))
