import logging
from abc import ABC, abstractmethod

import numpy as np

from config import LOGGER_NAME
from models.machine import MachineParameters
from models.plan import BlockPlan, Junction, LimitBreakdown
from models.toolpath import Toolpath
from models.trace import KinematicTrace, SimulationResult
from services.exceptions import InfeasiblePlanError
from services.limits import feed_setpoint
from services.profile import JerkSegment, block_jerk, block_segments, plan_block, reachable_feed
from services.transition import junction_table

logger = logging.getLogger(LOGGER_NAME)

DEFAULT_SAMPLE_STEP = 0.001

PlannedPath = tuple[list[LimitBreakdown], list[Junction], list[BlockPlan]]


def _junction_speeds(path: Toolpath, breakdowns: list[LimitBreakdown], junctions: list[Junction],
                     jerks: list[float]) -> list[float]:
    """Speeds at every block boundary, the path starting and ending at rest."""
    speeds = [0.0, *(junction.v_crossing for junction in junctions), 0.0]
    for i in reversed(range(len(path.blocks))):
        reach = reachable_feed(path.blocks[i].length, speeds[i + 1], jerks[i], breakdowns[i].v_st)
        speeds[i] = min(speeds[i], reach)
    for i, block in enumerate(path.blocks):
        reach = reachable_feed(block.length, speeds[i], jerks[i], breakdowns[i].v_st)
        speeds[i + 1] = min(speeds[i + 1], reach)
    return speeds


def sample_trace(path: Toolpath, plans: list[BlockPlan], sample_step: float = DEFAULT_SAMPLE_STEP) -> KinematicTrace:
    """Sample the planned motion on a regular time grid plus every segment boundary.

    A sample on a block boundary belongs to the downstream block; the final sample belongs to the last block.
    """
    segments: list[JerkSegment] = []
    owners: list[int] = []
    offsets: list[float] = []
    t0, s0 = 0.0, 0.0
    for i, plan in enumerate(plans):
        block_segs = block_segments(plan, t0)
        segments.extend(block_segs)
        owners.extend([i] * len(block_segs))
        offsets.extend([s0] * len(block_segs))
        t0 += plan.duration
        s0 += plan.length
    total_time = t0

    seg_t0 = np.array([seg.t0 for seg in segments])
    seg_s0 = np.array([seg.s0 for seg in segments])
    seg_v0 = np.array([seg.v0 for seg in segments])
    seg_a0 = np.array([seg.a0 for seg in segments])
    seg_j = np.array([seg.j for seg in segments])
    seg_owner = np.array(owners, dtype=np.int64)
    seg_offset = np.array(offsets)

    t = np.unique(np.concatenate([np.arange(0.0, total_time, sample_step), seg_t0, [total_time]]))
    idx = np.clip(np.searchsorted(seg_t0, t, side='right') - 1, 0, len(segments) - 1)
    tau = t - seg_t0[idx]

    jerk = seg_j[idx]
    s_local = seg_s0[idx] + seg_v0[idx] * tau + 0.5 * seg_a0[idx] * tau**2 + jerk * tau**3 / 6.0
    v = np.maximum(seg_v0[idx] + seg_a0[idx] * tau + 0.5 * jerk * tau**2, 0.0)
    a_t = seg_a0[idx] + jerk * tau

    block_index = seg_owner[idx]
    radius = np.array([block.r for block in path.blocks])[block_index]
    alpha_start = np.array([block.alpha_start for block in path.blocks])[block_index]
    sign = np.array([block.direction.sign for block in path.blocks])[block_index]
    center = np.array([block.center for block in path.blocks])[block_index]
    length = np.array([block.length for block in path.blocks])[block_index]

    s_local = np.clip(s_local, 0.0, length)
    alpha = alpha_start + sign * s_local / radius

    return KinematicTrace(
        t=t,
        s=seg_offset[idx] + s_local,
        x=center[:, 0] + radius * np.sin(alpha),
        y=center[:, 1] + radius * np.cos(alpha),
        v_f=v,
        a_t=a_t,
        a_n=v**2 / radius,
        j_t=jerk,
        block_index=block_index,
    )


class AbstractFeedSimulator(ABC):

    @abstractmethod
    def plan(self, path: Toolpath) -> PlannedPath:
        raise NotImplementedError('Compute set points, junction speeds and the feed law of every block.')

    @abstractmethod
    def simulate(self, path: Toolpath, sample_step: float = DEFAULT_SAMPLE_STEP) -> SimulationResult:
        raise NotImplementedError('Plan the toolpath and sample the resulting motion.')


class FeedSimulator(AbstractFeedSimulator):
    def __init__(self, machine: MachineParameters) -> None:
        self.machine: MachineParameters = machine

    def plan(self, path: Toolpath) -> PlannedPath:
        if not path.blocks:
            raise InfeasiblePlanError("toolpath has no blocks")
        machine, ncu = self.machine, self.machine.ncu
        breakdowns = [feed_setpoint(block, machine, ncu) for block in path.blocks]
        junctions = junction_table(path, breakdowns, machine)
        jerks = [block_jerk(block, machine, ncu) for block in path.blocks]
        speeds = _junction_speeds(path, breakdowns, junctions, jerks)

        plans: list[BlockPlan] = []
        for i, block in enumerate(path.blocks):
            try:
                plans.append(plan_block(block, speeds[i], speeds[i + 1], breakdowns[i].v_st, machine, ncu))
            except InfeasiblePlanError as exc:
                raise InfeasiblePlanError(exc.reason, block_index=i) from exc

        junctions = [junction.model_copy(update={'v_planned': speeds[junction.index]}) for junction in junctions]
        return breakdowns, junctions, plans

    def simulate(self, path: Toolpath, sample_step: float = DEFAULT_SAMPLE_STEP) -> SimulationResult:
        """Plan every block of the toolpath and sample the resulting feed-rate profile."""
        if sample_step <= 0:
            raise ValueError("sample step must be positive")
        breakdowns, junctions, plans = self.plan(path)
        trace = sample_trace(path, plans, sample_step)
        total_time = sum(plan.duration for plan in plans)
        logger.info(f"Simulated {len(path.blocks)} block(s): {total_time:.4f} s, {len(trace)} samples")
        return SimulationResult(
            breakdowns=breakdowns,
            junctions=junctions,
            plans=plans,
            trace=trace,
            total_time=total_time,
        )


def plan_toolpath(path: Toolpath, machine: MachineParameters) -> PlannedPath:
    return FeedSimulator(machine).plan(path)


def simulate_toolpath(path: Toolpath, machine: MachineParameters,
                      sample_step: float = DEFAULT_SAMPLE_STEP) -> SimulationResult:
    return FeedSimulator(machine).simulate(path, sample_step)
