import math

import numpy as np
import pytest
from scipy.integrate import cumulative_trapezoid

from models.machine import MachineParameters
from models.toolpath import Direction, Toolpath
from models.trace import KinematicTrace, SimulationResult
from services.exceptions import InfeasiblePlanError
from services.simulator import (
    DEFAULT_SAMPLE_STEP,
    AbstractFeedSimulator,
    FeedSimulator,
    plan_toolpath,
    sample_trace,
    simulate_toolpath,
)
from services.toolpath_generator import GeneratorParams, PathKind, generate_test_path


def _path(kind: PathKind, feed_m_min: float, incline_deg: float = 0.0) -> Toolpath:
    return generate_test_path(GeneratorParams(kind=kind, v_prog=feed_m_min / 60, incline=math.radians(incline_deg)))


def test_circle_time_and_trace(mikron: MachineParameters) -> None:
    result = simulate_toolpath(_path(PathKind.CIRCLE, 6), mikron)
    trace = result.trace
    assert result.total_time == pytest.approx(2.1678, rel=1e-4)
    assert trace.t[0] == 0.0
    assert trace.t[-1] == pytest.approx(result.total_time)
    assert trace.v_f[0] == pytest.approx(0.0, abs=1e-12)
    assert trace.v_f[-1] == pytest.approx(0.0, abs=1e-9)
    assert trace.v_f.max() == pytest.approx(0.1)
    assert trace.a_t.max() == pytest.approx(math.sqrt(0.5), rel=1e-6)
    assert trace.s[-1] == pytest.approx(2 * math.pi * 0.030, rel=1e-12)
    assert np.all(np.diff(trace.t) > 0)
    assert np.all(np.diff(trace.s) >= -1e-15)


def test_trace_stays_on_the_circle(mikron: MachineParameters) -> None:
    trace = simulate_toolpath(_path(PathKind.CIRCLE, 12), mikron).trace
    assert np.hypot(trace.x, trace.y) == pytest.approx(np.full(len(trace), 0.030), abs=1e-12)
    assert trace.a_n == pytest.approx(trace.v_f ** 2 / 0.030)


@pytest.mark.parametrize('radius_mm, expected_m_min', [(2.5, 2.01), (30, 10.53)])
def test_steady_feed_reached(mikron: MachineParameters, radius_mm: float, expected_m_min: float) -> None:
    path = generate_test_path(GeneratorParams(kind=PathKind.CIRCLE, v_prog=0.4, radius=radius_mm / 1000))
    result = simulate_toolpath(path, mikron)
    assert result.plans[0].has_phase_b
    assert result.trace.v_f.max() * 60 == pytest.approx(expected_m_min, rel=0.01)


def test_samples_include_segment_boundaries(mikron: MachineParameters) -> None:
    result = simulate_toolpath(_path(PathKind.CIRCLE, 6), mikron, sample_step=0.05)
    ramp = result.plans[0].durations[0]
    assert np.any(np.isclose(result.trace.t, ramp, rtol=0, atol=1e-15))
    assert np.any(np.isclose(result.trace.t, ramp / 2, rtol=0, atol=1e-15))


def test_quarter_spiral_phases(mikron: MachineParameters) -> None:
    result = simulate_toolpath(_path(PathKind.QUARTERSPIRAL, 6), mikron)
    assert [plan.has_phase_b for plan in result.plans[:4]] == [False, False, False, True]
    assert result.junctions[0].v_planned == pytest.approx(0.06, rel=1e-4)
    for junction in result.junctions:
        assert junction.v_planned <= junction.v_crossing + 1e-12
        assert result.plans[junction.index - 1].v_exit == pytest.approx(junction.v_planned)
        assert result.plans[junction.index].v_entry == pytest.approx(junction.v_planned)


def test_junction_samples_belong_downstream(mikron: MachineParameters) -> None:
    result = simulate_toolpath(_path(PathKind.QUARTERSPIRAL, 6), mikron)
    trace = result.trace
    boundary = result.plans[0].duration
    at_junction = np.flatnonzero(np.isclose(trace.t, boundary, rtol=0, atol=1e-15))
    assert at_junction.size == 1
    assert trace.block_index[at_junction[0]] == 1
    assert trace.v_f[at_junction[0]] == pytest.approx(result.junctions[0].v_planned, rel=1e-9)
    assert trace.block_index[-1] == len(result.plans) - 1
    assert np.all(np.diff(trace.block_index) >= 0)


@pytest.fixture(scope='module')
def inclined_spirals(mikron: MachineParameters) -> list[SimulationResult]:
    return [simulate_toolpath(_path(PathKind.QUARTERSPIRAL, 12, incline), mikron) for incline in (0, 30, 45)]


def test_incline_raises_peak_on_first_arc(inclined_spirals: list[SimulationResult]) -> None:
    peaks = [result.plans[0].v_peak * 60 for result in inclined_spirals]
    assert peaks[0] < peaks[1] < peaks[2]
    assert peaks == pytest.approx([4.3929, 4.5139, 4.7300], rel=1e-3)


def test_incline_opens_steady_phase(inclined_spirals: list[SimulationResult]) -> None:
    arcs = [result.plans[4] for result in inclined_spirals]
    assert _path(PathKind.QUARTERSPIRAL, 12).blocks[4].r == pytest.approx(0.018)
    steady = [plan.durations[1] for plan in arcs]
    assert not arcs[0].has_phase_b
    assert steady[0] == 0.0
    assert steady[0] < steady[1] < steady[2]
    assert steady[1:] == pytest.approx([0.00234, 0.09475], rel=0.02)
    assert arcs[2].lengths[1] == pytest.approx(0.0119, rel=0.05)


def test_block_times_sum_to_total(mikron: MachineParameters) -> None:
    result = simulate_toolpath(_path(PathKind.SEMISPIRAL, 9), mikron)
    assert sum(result.block_times) == pytest.approx(result.total_time)
    assert len(result.breakdowns) == len(result.plans) == 5


@pytest.mark.parametrize('cutting_m_min, expected_s', [(470, 0.53), (580, 0.54), (670, 0.53)])
def test_small_bore_time(mikron: MachineParameters, cutting_m_min: float, expected_s: float) -> None:
    path = generate_test_path(GeneratorParams(kind=PathKind.BORE, cutting_speed=cutting_m_min / 60))
    result = simulate_toolpath(path, mikron)
    assert result.junctions[0].v_crossing * 60 == pytest.approx(0.9, rel=1e-3)
    assert result.block_times[1] == pytest.approx(expected_s, rel=0.10)


@pytest.mark.parametrize('cutting_m_min, expected_s', [(530, 1.76), (750, 1.36), (940, 1.28)])
def test_large_bore_time(mikron: MachineParameters, cutting_m_min: float, expected_s: float) -> None:
    params = GeneratorParams(kind=PathKind.BORE, cutting_speed=cutting_m_min / 60,
                             bore_diameter=0.080, approach_radius=0.020)
    result = simulate_toolpath(generate_test_path(params), mikron)
    assert result.junctions[0].v_crossing * 60 == pytest.approx(3.6, rel=1e-3)
    assert result.block_times[1] == pytest.approx(expected_s, rel=0.10)


def test_plan_and_sample_separately(mikron: MachineParameters) -> None:
    path = _path(PathKind.SEMISPIRAL, 6)
    _, _, plans = plan_toolpath(path, mikron)
    trace = sample_trace(path, plans, 0.002)
    assert trace.t[-1] == pytest.approx(sum(plan.duration for plan in plans))


def test_rejects_non_positive_step(mikron: MachineParameters) -> None:
    with pytest.raises(ValueError):
        simulate_toolpath(_path(PathKind.CIRCLE, 6), mikron, sample_step=0.0)


def _random_spiral(rng: np.random.Generator) -> Toolpath:
    kind = (PathKind.SEMISPIRAL, PathKind.QUARTERSPIRAL)[int(rng.integers(2))]
    return generate_test_path(GeneratorParams(
        kind=kind,
        v_prog=rng.uniform(3.0, 20.0) / 60,
        direction=list(Direction)[int(rng.integers(2))],
        incline=rng.uniform(0.0, 2 * math.pi),
        step=rng.uniform(0.001, 0.008),
    ))


def _assert_trace_invariants(path: Toolpath, result: SimulationResult) -> None:
    trace = result.trace
    owner = trace.block_index
    radius = np.array([block.r for block in path.blocks])[owner]
    center = np.array([block.center for block in path.blocks])[owner]
    j_used = np.array([plan.j_used for plan in result.plans])[owner]
    v_cap = max(breakdown.v_st for breakdown in result.breakdowns)

    assert np.all(np.abs(trace.j_t) <= j_used * (1 + 1e-12))
    assert trace.a_n * radius == pytest.approx(trace.v_f ** 2, rel=1e-9, abs=1e-18)
    assert np.hypot(trace.x - center[:, 0], trace.y - center[:, 1]) == pytest.approx(radius, abs=1e-12)
    assert np.all(np.diff(trace.t) > 0)
    assert np.all(np.diff(trace.s) >= -1e-15)
    assert np.all(trace.v_f >= 0)
    assert np.all(trace.v_f <= v_cap * (1 + 1e-9))
    assert trace.s[-1] == pytest.approx(path.length, rel=1e-12)
    assert trace.t[-1] == pytest.approx(result.total_time, rel=1e-12)
    for junction in result.junctions:
        assert junction.v_planned <= junction.v_crossing + 1e-12


def test_random_spirals_keep_trace_invariants(mikron: MachineParameters, rng: np.random.Generator) -> None:
    for _ in range(20):
        path = _random_spiral(rng)
        _assert_trace_invariants(path, simulate_toolpath(path, mikron))


def test_bores_keep_trace_invariants(mikron: MachineParameters) -> None:
    for cutting_m_min in (470, 750, 940):
        params = GeneratorParams(kind=PathKind.BORE, cutting_speed=cutting_m_min / 60,
                                 bore_diameter=0.080, approach_radius=0.020)
        path = generate_test_path(params)
        _assert_trace_invariants(path, simulate_toolpath(path, mikron))


def _integrate_jerk(trace: KinematicTrace) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    # The jerk of a sample holds up to the next sample; the acceleration is then piecewise linear.
    dt = np.diff(trace.t)
    a = np.concatenate([[trace.a_t[0]], trace.a_t[0] + np.cumsum(trace.j_t[:-1] * dt)])
    v = trace.v_f[0] + cumulative_trapezoid(a, trace.t, initial=0.0)
    s = trace.s[0] + cumulative_trapezoid(v, trace.t, initial=0.0)
    return a, v, s


def test_trace_matches_integrated_jerk(mikron: MachineParameters, rng: np.random.Generator) -> None:
    for _ in range(3):
        path = _random_spiral(rng)
        _, _, plans = plan_toolpath(path, mikron)
        trace = sample_trace(path, plans, DEFAULT_SAMPLE_STEP / 10)
        a, v, s = _integrate_jerk(trace)
        assert a == pytest.approx(trace.a_t, abs=1e-9)
        assert v == pytest.approx(trace.v_f, abs=1e-6)
        assert s == pytest.approx(trace.s, abs=1e-7)


def test_feed_simulator_matches_entry_points(mikron: MachineParameters) -> None:
    simulator = FeedSimulator(mikron)
    assert isinstance(simulator, AbstractFeedSimulator)
    path = _path(PathKind.SEMISPIRAL, 6)
    result = simulator.simulate(path)
    assert result.total_time == simulate_toolpath(path, mikron).total_time
    assert simulator.plan(path)[2] == plan_toolpath(path, mikron)[2]


def test_feed_simulator_rejects_empty_path(mikron: MachineParameters) -> None:
    with pytest.raises(InfeasiblePlanError):
        FeedSimulator(mikron).plan(Toolpath(blocks=()))
