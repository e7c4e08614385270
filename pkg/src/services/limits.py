"""Feed-rate limits of circular interpolation.

Angle-dependent limits are evaluated at an angular position alpha_c where the path point is
P(alpha_c) = C + r * (sin alpha_c, cos alpha_c). A zero cosine or sine removes the matching
axis term, so single-axis motion is bound by the other axis alone.
"""
import logging
import math

import numpy as np
from pydantic import BaseModel, ConfigDict
from scipy.optimize import brentq

from config import LOGGER_NAME
from helpers.angles import FloatArray, TWO_PI, generate_angle_grid, normalize_angle
from models.machine import MachineParameters, NcuSettings
from models.plan import LimitBreakdown, LimitTerm
from models.toolpath import ArcBlock

logger = logging.getLogger(LOGGER_NAME)

ZERO_PROJECTION = 1e-15
SWEEP_RESOLUTION = math.radians(0.05)
SETPOINT_TOLERANCE = 1e-6
SETPOINT_MAX_ITERATIONS = 10
BINDING_RELATIVE_TOLERANCE = 1e-9

# Ties between limit terms resolve in this order.
BINDING_PRIORITY = (
    LimitTerm.V_PROG,
    LimitTerm.V_JTCURV,
    LimitTerm.V_TCY,
    LimitTerm.V_T,
    LimitTerm.V_AN,
    LimitTerm.V_JT,
)


def _capacity_over(capacity: float, projection: FloatArray) -> FloatArray:
    magnitude = np.abs(projection)
    with np.errstate(divide='ignore'):
        return np.where(magnitude > ZERO_PROJECTION, capacity / np.maximum(magnitude, ZERO_PROJECTION), np.inf)


def _axis_feed(alpha: FloatArray, caps: MachineParameters) -> FloatArray:
    return np.minimum(_capacity_over(caps.x.v_max, np.cos(alpha)), _capacity_over(caps.y.v_max, np.sin(alpha)))


def _normal_accel(alpha: FloatArray, caps: MachineParameters) -> FloatArray:
    return np.minimum(_capacity_over(caps.x.a_max, np.sin(alpha)), _capacity_over(caps.y.a_max, np.cos(alpha)))


def _tangential_jerk(alpha: FloatArray, caps: MachineParameters) -> FloatArray:
    return np.minimum(_capacity_over(caps.x.j_max, np.cos(alpha)), _capacity_over(caps.y.j_max, np.sin(alpha)))


def _static_lookahead(alpha: FloatArray, r: float, caps: MachineParameters) -> FloatArray:
    v_an = np.sqrt(r * _normal_accel(alpha, caps))
    v_jt = np.cbrt(_tangential_jerk(alpha, caps) * r * r)
    return np.minimum(_axis_feed(alpha, caps), np.minimum(v_an, v_jt))


def axis_feed_limit(alpha_c: float, caps: MachineParameters) -> float:
    return float(_axis_feed(np.asarray(alpha_c, dtype=np.float64), caps))


def normal_accel_limit(alpha_c: float, caps: MachineParameters) -> float:
    return float(_normal_accel(np.asarray(alpha_c, dtype=np.float64), caps))


def tangential_jerk_limit(alpha_c: float, caps: MachineParameters) -> float:
    return float(_tangential_jerk(np.asarray(alpha_c, dtype=np.float64), caps))


def feed_from_accel(a_n: float, r: float) -> float:
    return math.sqrt(r * a_n) if a_n > 0 else 0.0


def feed_from_jerk(j_t: float, r: float) -> float:
    return (j_t * r * r) ** (1.0 / 3.0) if j_t > 0 else 0.0


def static_lookahead(alpha_c: float, r: float, caps: MachineParameters) -> float:
    return min(
        axis_feed_limit(alpha_c, caps),
        feed_from_accel(normal_accel_limit(alpha_c, caps), r),
        feed_from_jerk(tangential_jerk_limit(alpha_c, caps), r),
    )


def cycle_time_limit(r: float, alpha_s: float, alpha_e: float, t_cy: float) -> float:
    return r * abs(alpha_e - alpha_s) / t_cy


def ncu_tangential_jerk(ncu: NcuSettings) -> float:
    return ncu.j_curv * ncu.r_jct


class StaticSweep(BaseModel):
    model_config = ConfigDict(frozen=True)

    alpha: tuple[float, ...]
    v_t: tuple[float, ...]
    v_an: tuple[float, ...]
    v_jt: tuple[float, ...]
    v_s: tuple[float, ...]

    def argmin(self, series: str) -> tuple[float, float]:
        values = np.asarray(getattr(self, series))
        index = int(np.argmin(values))
        return self.alpha[index], float(values[index])

    def argmax(self, series: str) -> tuple[float, float]:
        values = np.asarray(getattr(self, series))
        index = int(np.argmax(values))
        return self.alpha[index], float(values[index])


def sweep_static_lookahead(r: float, caps: MachineParameters, samples: int = 3601) -> StaticSweep:
    alpha = np.linspace(0.0, TWO_PI, samples)
    v_t = _axis_feed(alpha, caps)
    v_an = np.sqrt(r * _normal_accel(alpha, caps))
    v_jt = np.cbrt(_tangential_jerk(alpha, caps) * r * r)
    v_s = np.minimum(v_t, np.minimum(v_an, v_jt))
    return StaticSweep(alpha=tuple(alpha), v_t=tuple(v_t), v_an=tuple(v_an), v_jt=tuple(v_jt), v_s=tuple(v_s))


def _first_admitting_angle(alphas: FloatArray, lookahead: FloatArray, v: float, r: float,
                           caps: MachineParameters) -> float | None:
    admitted = np.flatnonzero(lookahead >= v)
    if admitted.size == 0:
        return None
    k = int(admitted[0])
    if k == 0:
        return float(alphas[0])

    def excess(alpha: float) -> float:
        # Same vectorised evaluation as the grid, so the bracket keeps its sign change.
        return float(_static_lookahead(np.asarray(alpha, dtype=np.float64), r, caps)) - v

    low, high = sorted((float(alphas[k - 1]), float(alphas[k])))
    if excess(low) * excess(high) > 0:
        return float(alphas[k])
    return float(brentq(excess, low, high, xtol=1e-14))


def _binding_term(terms: dict[LimitTerm, float], v_st: float) -> LimitTerm:
    for term in BINDING_PRIORITY:
        if terms[term] <= v_st * (1.0 + BINDING_RELATIVE_TOLERANCE):
            return term
    return min(terms, key=terms.__getitem__)


def feed_setpoint(block: ArcBlock, caps: MachineParameters, ncu: NcuSettings) -> LimitBreakdown:
    """Feed rate set point of one block with the breakdown of every limiting term.

    The angle-dependent terms are evaluated where the feed becomes constant: the first angular
    position along the block at which the static look-ahead admits the candidate set point. When
    no position admits it, the candidate drops to the best steady feed the arc offers and the
    search repeats until the candidate stops moving.
    """
    r = block.r
    v_jtcurv = feed_from_jerk(ncu_tangential_jerk(ncu), r)
    v_tcy = cycle_time_limit(r, block.alpha_start, block.alpha_end, ncu.t_cy)

    alphas = generate_angle_grid(block.alpha_start, block.alpha_end, SWEEP_RESOLUTION)
    lookahead = _static_lookahead(alphas, r, caps)

    v = min(block.v_prog, v_jtcurv, v_tcy)
    alpha_eval: float | None = None
    converged = False
    for _ in range(SETPOINT_MAX_ITERATIONS):
        alpha_eval = _first_admitting_angle(alphas, lookahead, v, r, caps)
        if alpha_eval is None:
            best = int(np.argmax(lookahead))
            alpha_eval, v_next = float(alphas[best]), float(lookahead[best])
        else:
            v_next = min(v, static_lookahead(alpha_eval, r, caps))
        shift = abs(v_next - v)
        v = v_next
        if shift < SETPOINT_TOLERANCE:
            converged = True
            break

    if not converged or alpha_eval is None:
        worst = int(np.argmin(lookahead))
        alpha_eval = float(alphas[worst])
        logger.warning(f"Set point search did not settle for r={r:.6g} m; using the arc minimum of the static look-ahead")

    terms: dict[LimitTerm, float] = {
        LimitTerm.V_PROG: block.v_prog,
        LimitTerm.V_JTCURV: v_jtcurv,
        LimitTerm.V_TCY: v_tcy,
        LimitTerm.V_T: axis_feed_limit(alpha_eval, caps),
        LimitTerm.V_AN: feed_from_accel(normal_accel_limit(alpha_eval, caps), r),
        LimitTerm.V_JT: feed_from_jerk(tangential_jerk_limit(alpha_eval, caps), r),
    }
    v_st = min(terms.values())
    binding = _binding_term(terms, v_st)
    logger.debug(f"Set point r={r:.6g} m: {v_st * 60:.4f} m/min bound by {binding} at alpha {math.degrees(alpha_eval):.2f} deg")
    return LimitBreakdown(
        v_t=terms[LimitTerm.V_T],
        v_an=terms[LimitTerm.V_AN],
        v_jt=terms[LimitTerm.V_JT],
        v_jtcurv=v_jtcurv,
        v_tcy=v_tcy,
        v_prog=block.v_prog,
        v_st=v_st,
        binding=binding,
        alpha_eval=normalize_angle(alpha_eval),
        converged=converged,
    )
