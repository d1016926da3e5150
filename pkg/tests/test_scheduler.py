import math

import pytest

from treeagents import (
    AgentState,
    NoiseModel,
    ScheduleConfig,
    Simulation,
    StepKind,
    action_weights,
    build_tree,
    is_due,
    judgement_weights,
)

SQRT2 = math.sqrt(2.0)


def make_sim(levels, ratio=3, eta=0.0, epsilon=0.0, world0=3.0, seed=0, states=None, listener=None):
    return Simulation(
        tree=build_tree(levels),
        schedule=ScheduleConfig(levels=levels, ratio=ratio),
        sigma=judgement_weights(0.1),
        alpha=action_weights(0.2),
        noise=NoiseModel(eta=eta, psi=SQRT2, seed=seed),
        world0=world0,
        epsilon=epsilon,
        initial_states=states,
        step_listener=listener,
    )


def run_with_log(levels, ticks, ratio=3, **kw):
    log = []
    sim = make_sim(levels, ratio=ratio, listener=lambda t, i, k: log.append((t, i, k)), **kw)
    for _ in range(ticks):
        sim.advance_tick()
    return sim, log


def test_schedule_periods():
    s = ScheduleConfig(levels=3, ratio=3)
    assert [s.period(l) for l in range(3)] == [9, 3, 1]
    assert s.top_cycle_ticks() == 27
    assert ScheduleConfig(levels=4, ratio=2).period(0) == 8


def test_schedule_validation():
    with pytest.raises(ValueError, match="levels"):
        ScheduleConfig(levels=0)
    with pytest.raises(ValueError, match="ratio"):
        ScheduleConfig(levels=3, ratio=1)
    with pytest.raises(ValueError, match="level"):
        ScheduleConfig(levels=3).period(3)


def test_is_due_examples():
    s = ScheduleConfig(levels=3, ratio=3)
    assert all(is_due(2, t, s) for t in range(30))  # bottom level: every tick
    assert [t for t in range(20) if is_due(0, t, s)] == [0, 9, 18]
    assert [t for t in range(10) if is_due(1, t, s)] == [0, 3, 6, 9]
    with pytest.raises(ValueError):
        is_due(0, -1, s)


def test_single_agent_worked_cycle():
    # lone agent is its own parent and children; first cycle M, J, A
    sim, log = run_with_log(1, 3)
    s = sim.states[0]
    assert log == [(0, 0, StepKind.MEASURE), (1, 0, StepKind.JUDGE), (2, 0, StepKind.ACT)]
    assert s.observation == 3.0
    assert (s.parent_judgement, s.left_judgement, s.right_judgement) == (0.0, 0.0, 0.0)
    assert s.judgement == pytest.approx(2.1, rel=1e-12)
    assert s.action == pytest.approx(0.42, rel=1e-12)


def test_all_equal_start_is_a_fixed_point():
    c = 3.0
    states = [AgentState(c, c, c, c, c, c) for _ in range(15)]
    sim = make_sim(4, world0=c, states=states)
    for _ in range(200):
        sim.advance_tick()
    assert sim.world.value == c
    assert all(s.as_tuple() == (c,) * 6 for s in sim.states)


def test_two_level_interleaving_at_tick_three():
    # the parent's second step (judge) lands before the children's fourth (measure)
    _, log = run_with_log(2, 4)
    tick3 = [(i, k) for t, i, k in log if t == 3]
    assert tick3 == [(0, StepKind.JUDGE), (1, StepKind.MEASURE), (2, StepKind.MEASURE)]


def test_children_collect_parent_judgement_made_same_tick():
    sim, log = run_with_log(2, 4)
    # parent judged 0.7*3 = 2.1 at tick 3; children measured afterwards
    assert sim.states[1].parent_judgement == sim.states[0].judgement
    assert sim.states[1].parent_judgement == pytest.approx(2.1, rel=1e-12)


def test_top_down_and_ascending_order_within_tick():
    _, log = run_with_log(3, 27)
    by_tick = {}
    for t, i, _ in log:
        by_tick.setdefault(t, []).append(i)
    tree = build_tree(3)
    for t, agents in by_tick.items():
        levels = [tree.level_of(i) for i in agents]
        assert levels == sorted(levels)
        for lvl in set(levels):
            at_level = [i for i in agents if tree.level_of(i) == lvl]
            assert at_level == sorted(at_level)


def test_one_step_per_due_agent_per_tick():
    _, log = run_with_log(3, 27)
    for t in range(27):
        agents = [i for tt, i, _ in log if tt == t]
        assert len(agents) == len(set(agents))


def test_per_agent_kind_cycle():
    _, log = run_with_log(3, 27)
    for agent in range(7):
        kinds = [k for _, i, k in log if i == agent]
        expected = [StepKind.MEASURE, StepKind.JUDGE, StepKind.ACT] * 9
        assert kinds == expected[: len(kinds)]


def test_child_takes_ratio_steps_per_parent_step():
    for ratio in (2, 3):
        _, log = run_with_log(3, 4 * ratio**2, ratio=ratio)
        flat = [(i, n) for n, (_, i, _) in enumerate(log)]
        tree = build_tree(3)
        for parent in (0, 1, 2):
            child = tree.children_of(parent)[0]
            parent_positions = [n for i, n in flat if i == parent]
            for a, b in zip(parent_positions, parent_positions[1:]):
                between = sum(1 for i, n in flat if i == child and a < n <= b)
                assert between == ratio


def test_draw_counter_increments_only_on_measure():
    sim, log = run_with_log(2, 7)
    measures = {}
    for _, i, k in log:
        if k is StepKind.MEASURE:
            measures[i] = measures.get(i, 0) + 1
    for i, cursor in enumerate(sim.cursors):
        assert cursor.draws_taken == measures.get(i, 0)


def test_trajectories_bit_identical_across_replays():
    def trajectory(seed):
        sim = make_sim(3, eta=1e-3, epsilon=2e-3, seed=seed)
        out = []
        for _ in range(54):
            sim.advance_tick()
            out.append((sim.world.value, tuple(s.as_tuple() for s in sim.states)))
        return out

    assert trajectory(7) == trajectory(7)
    assert trajectory(7) != trajectory(8)


def test_initial_state_length_checked():
    with pytest.raises(ValueError, match="initial states"):
        make_sim(3, states=[AgentState()] * 6)


def test_schedule_tree_levels_must_agree():
    with pytest.raises(ValueError, match="levels"):
        Simulation(
            tree=build_tree(3),
            schedule=ScheduleConfig(levels=4),
            sigma=judgement_weights(0.1),
            alpha=action_weights(0.2),
            noise=NoiseModel(eta=0.0, psi=SQRT2, seed=0),
            world0=3.0,
        )
