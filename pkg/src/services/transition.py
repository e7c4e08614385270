import logging
import math

from config import LOGGER_NAME
from models.machine import MachineParameters
from models.plan import Junction, LimitBreakdown, TransitionSpec
from models.toolpath import AngularPosition, Toolpath
from services.limits import tangential_jerk_limit

logger = logging.getLogger(LOGGER_NAME)


def transition_jerk(alpha: float, caps: MachineParameters) -> float:
    return tangential_jerk_limit(alpha, caps)


def transition_feedrate(spec: TransitionSpec, caps: MachineParameters, delta_t: float) -> float:
    """Curvature-discontinuity crossing speed; infinite when both radii match."""
    if not spec.is_discontinuous:
        return math.inf
    j_t = transition_jerk(spec.alpha, caps)
    return math.sqrt(spec.r1 * spec.r2 * j_t * delta_t / abs(spec.r1 - spec.r2))


def effective_crossing_speed(spec: TransitionSpec, caps: MachineParameters, delta_t: float) -> float:
    # A block feed already below the crossing speed loses nothing at the transition.
    caps_in = [spec.v_in_cap] if spec.v_out_cap is None else [spec.v_in_cap, spec.v_out_cap]
    return min(transition_feedrate(spec, caps, delta_t), *caps_in)


def junction_table(path: Toolpath, breakdowns: list[LimitBreakdown], caps: MachineParameters) -> list[Junction]:
    junctions: list[Junction] = []
    delta_t = caps.ncu.delta_t
    for index in range(1, len(path.blocks)):
        upstream, downstream = path.blocks[index - 1], path.blocks[index]
        alpha = AngularPosition(alpha_c=downstream.alpha_start).alpha_c
        spec = TransitionSpec(
            r1=upstream.r,
            r2=downstream.r,
            alpha=alpha,
            v_in_cap=breakdowns[index - 1].v_st,
            v_out_cap=breakdowns[index].v_st,
        )
        v_fr = transition_feedrate(spec, caps, delta_t)
        v_crossing = effective_crossing_speed(spec, caps, delta_t)
        logger.info(
            f"Junction {index}: r {upstream.r * 1e3:g}->{downstream.r * 1e3:g} mm at "
            f"{math.degrees(alpha):.1f} deg, crossing {v_crossing * 60:.3f} m/min"
        )
        junctions.append(Junction(
            index=index,
            r1=upstream.r,
            r2=downstream.r,
            alpha=alpha,
            j_t=transition_jerk(alpha, caps),
            v_fr=None if math.isinf(v_fr) else v_fr,
            v_crossing=v_crossing,
            v_planned=v_crossing,
        ))
    return junctions
