"""Controlled-jerk feed-rate law of a circular block.

Each speed change is a pair of parabolic speed segments: the tangential acceleration rises at
+j then falls at -j (triangular acceleration, no plateau). A ramp between v0 and v1 therefore
lasts 2 * sqrt(|v1 - v0| / j) and covers (v0 + v1) * sqrt(|v1 - v0| / j).
"""
import logging
import math
from dataclasses import dataclass

from scipy.optimize import bisect

from config import LOGGER_NAME
from helpers.angles import axis_directions_between
from models.machine import MachineParameters, NcuSettings
from models.plan import BlockPlan
from models.toolpath import ArcBlock
from services.exceptions import InfeasiblePlanError
from services.limits import ncu_tangential_jerk, tangential_jerk_limit

logger = logging.getLogger(LOGGER_NAME)

SPEED_XTOL = 1e-15
LENGTH_SLACK = 1e-12


@dataclass(frozen=True)
class JerkSegment:
    t0: float
    duration: float
    s0: float
    v0: float
    a0: float
    j: float

    def state_at(self, tau: float) -> tuple[float, float, float]:
        s = self.s0 + self.v0 * tau + 0.5 * self.a0 * tau * tau + self.j * tau ** 3 / 6.0
        v = self.v0 + self.a0 * tau + 0.5 * self.j * tau * tau
        a = self.a0 + self.j * tau
        return s, v, a


def ramp_time(v_from: float, v_to: float, j: float) -> float:
    return 2.0 * math.sqrt(abs(v_to - v_from) / j)


def ramp_distance(v_from: float, v_to: float, j: float) -> float:
    return (v_from + v_to) * math.sqrt(abs(v_to - v_from) / j)


def solve_peak_feed(arc_len: float, v_start: float, v_end: float, j: float, v_cap: float) -> float:
    """Highest feed reachable between two jerk-limited ramps on an arc of length arc_len.

    Solves sqrt(Vf - Vre) * (Vf + Vre) + sqrt(Vf - Vrs) * (Vf + Vrs) = L * sqrt(J) for Vf,
    returning v_cap when the cap is reachable with length to spare.
    """
    floor = max(v_start, v_end)

    def excess(v: float) -> float:
        return ramp_distance(v_start, v, j) + ramp_distance(v_end, v, j) - arc_len

    if ramp_distance(min(v_start, v_end), floor, j) > arc_len * (1.0 + LENGTH_SLACK) + LENGTH_SLACK:
        raise InfeasiblePlanError(
            f"speed change {min(v_start, v_end):.6g} -> {floor:.6g} m/s needs more than {arc_len:.6g} m"
        )
    if excess(v_cap) <= 0:
        return v_cap
    if excess(floor) >= 0:
        return floor
    return float(bisect(excess, floor, v_cap, xtol=SPEED_XTOL, maxiter=200))


def reachable_feed(arc_len: float, v_start: float, j: float, v_cap: float) -> float:
    """Highest speed a single jerk-limited ramp from v_start reaches within arc_len, capped by v_cap."""
    if v_cap <= v_start or ramp_distance(v_start, v_cap, j) <= arc_len:
        return v_cap

    def excess(v: float) -> float:
        return ramp_distance(v_start, v, j) - arc_len

    return float(bisect(excess, v_start, v_cap, xtol=SPEED_XTOL, maxiter=200))


def block_jerk(block: ArcBlock, caps: MachineParameters, ncu: NcuSettings) -> float:
    """Minimum tangential jerk over the block span, capped by the NCU tangential jerk."""
    # Each jerk term is monotonic between axis directions, so the minimum sits on an end or an axis.
    candidates = [block.alpha_start, block.alpha_end, *axis_directions_between(block.alpha_start, block.alpha_end)]
    j_axes = min(tangential_jerk_limit(alpha, caps) for alpha in candidates)
    return min(j_axes, ncu_tangential_jerk(ncu))


def plan_block(block: ArcBlock, v_entry: float, v_exit: float, v_st: float,
               caps: MachineParameters, ncu: NcuSettings) -> BlockPlan:
    j = block_jerk(block, caps, ncu)
    v_entry = min(v_entry, v_st)
    v_exit = min(v_exit, v_st)
    arc_len = block.length

    length_a = ramp_distance(v_entry, v_st, j)
    length_c = ramp_distance(v_exit, v_st, j)
    if length_a + length_c <= arc_len:
        v_peak = v_st
        has_phase_b = True
    else:
        v_peak = solve_peak_feed(arc_len, v_entry, v_exit, j, v_st)
        length_a = ramp_distance(v_entry, v_peak, j)
        length_c = max(arc_len - length_a, 0.0)
        has_phase_b = False
    length_b = arc_len - length_a - length_c if has_phase_b else 0.0

    durations = (
        ramp_time(v_entry, v_peak, j),
        length_b / v_st if has_phase_b else 0.0,
        ramp_time(v_peak, v_exit, j),
    )

    peak_a_t = math.sqrt(j * max(v_peak - v_entry, v_peak - v_exit))
    peak_a_n = v_peak * v_peak / block.r
    accel_exceeded = math.hypot(peak_a_t, peak_a_n) > min(caps.x.a_max, caps.y.a_max)
    if accel_exceeded:
        logger.warning(f"Block r={block.r:.6g} m: ramp acceleration {math.hypot(peak_a_t, peak_a_n):.3f} m/s^2 exceeds axis capacity")

    return BlockPlan(
        v_entry=v_entry,
        v_exit=v_exit,
        v_peak=v_peak,
        v_st=v_st,
        has_phase_b=has_phase_b,
        j_used=j,
        durations=durations,
        lengths=(length_a, length_b, length_c),
        accel_capacity_exceeded=accel_exceeded,
    )


def _ramp_segments(t0: float, s0: float, v_from: float, v_to: float, j: float) -> tuple[list[JerkSegment], float, float]:
    if v_to == v_from:
        return [], t0, s0
    half = 0.5 * ramp_time(v_from, v_to, j)
    sign = 1.0 if v_to > v_from else -1.0
    first = JerkSegment(t0=t0, duration=half, s0=s0, v0=v_from, a0=0.0, j=sign * j)
    s_mid, v_mid, a_mid = first.state_at(half)
    second = JerkSegment(t0=t0 + half, duration=half, s0=s_mid, v0=v_mid, a0=a_mid, j=-sign * j)
    s_end, _, _ = second.state_at(half)
    return [first, second], t0 + 2.0 * half, s_end


def block_segments(plan: BlockPlan, t0: float = 0.0) -> list[JerkSegment]:
    """Piecewise-constant-jerk segments of a planned block, positions local to the block."""
    segments, t, s = _ramp_segments(t0, 0.0, plan.v_entry, plan.v_peak, plan.j_used)
    if plan.has_phase_b and plan.durations[1] > 0:
        segments.append(JerkSegment(t0=t, duration=plan.durations[1], s0=s, v0=plan.v_peak, a0=0.0, j=0.0))
        t, s = t + plan.durations[1], s + plan.lengths[1]
    tail, _, _ = _ramp_segments(t, s, plan.v_peak, plan.v_exit, plan.j_used)
    return segments + tail
