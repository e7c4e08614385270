import logging
import math
from enum import StrEnum
from collections.abc import Sequence

from pydantic import BaseModel, ConfigDict, Field, model_validator

from config import LOGGER_NAME
from helpers.angles import TWO_PI, HALF_PI, normalize_angle, unit_radial
from models.toolpath import ArcBlock, Direction, Toolpath
from services.exceptions import ZeroLengthArcError
from services.toolpath_validator import ensure_continuous

logger = logging.getLogger(LOGGER_NAME)

DEFAULT_STEPS: dict[str, float] = {'semispiral': 0.005, 'quarterspiral': 0.002}


class PathKind(StrEnum):
    CIRCLE = 'circle'
    SEMISPIRAL = 'semispiral'
    QUARTERSPIRAL = 'quarterspiral'
    BORE = 'bore'


class GeneratorParams(BaseModel):
    """Generator inputs in SI units (m, rad, m/s)."""

    model_config = ConfigDict(frozen=True)

    kind: PathKind
    v_prog: float | None = Field(default=None, gt=0)
    direction: Direction = Direction.CCW
    center: tuple[float, float] = (0.0, 0.0)
    incline: float = Field(default=0.0, description="Rotation of the junction angular positions (rad)")
    radius: float = 0.030
    r_start: float = 0.010
    r_end: float = 0.030
    step: float | None = None
    tool_diameter: float = 0.020
    bore_diameter: float = 0.025
    approach_radius: float = 0.0015
    approach_span: float = HALF_PI
    cutting_speed: float | None = Field(default=None, gt=0, description="Cutting speed (m/s)")
    teeth: int = Field(default=4, gt=0)
    feed_per_tooth: float = Field(default=0.0002, gt=0)

    @model_validator(mode='after')
    def check_feed_source(self) -> 'GeneratorParams':
        if self.v_prog is None and self.cutting_speed is None:
            raise ValueError("Either a programmed feed or a cutting speed is required")
        return self


def programmed_feed_from_cutting(cutting_speed: float, tool_diameter: float, teeth: int, feed_per_tooth: float) -> float:
    spindle_rev_s = cutting_speed / (math.pi * tool_diameter)
    return spindle_rev_s * teeth * feed_per_tooth


def chain_tangent_arcs(
    first_center: tuple[float, float],
    radii: Sequence[float],
    spans: Sequence[float],
    alpha0: float,
    direction: Direction,
    v_prog: float,
) -> Toolpath:
    """Join arcs end to start so that every junction shares position and tangent."""
    blocks: list[ArcBlock] = []
    center = first_center
    alpha = normalize_angle(alpha0)
    for index, (radius, span) in enumerate(zip(radii, spans, strict=True)):
        if radius <= 0 or span <= 0:
            raise ZeroLengthArcError(index)
        if blocks:
            # Centres of tangent arcs of equal orientation lie on the shared normal.
            u_x, u_y = unit_radial(alpha)
            shift = blocks[-1].r - radius
            center = (center[0] + shift * u_x, center[1] + shift * u_y)
        alpha_end = alpha + direction.sign * span
        blocks.append(ArcBlock(center=center, r=radius, alpha_start=alpha, alpha_end=alpha_end,
                               direction=direction, v_prog=v_prog))
        alpha = alpha_end
    return ensure_continuous(Toolpath(blocks=tuple(blocks)))


def spiral_radii(r_start: float, r_end: float, step: float) -> list[float]:
    if r_start <= 0 or step <= 0 or r_end < r_start:
        raise ZeroLengthArcError()
    count = int(math.floor((r_end - r_start) / step + 1e-9)) + 1
    return [r_start + k * step for k in range(count)]


def _resolve_feed(params: GeneratorParams) -> float:
    if params.v_prog is not None:
        return params.v_prog
    assert params.cutting_speed is not None
    return programmed_feed_from_cutting(params.cutting_speed, params.tool_diameter, params.teeth, params.feed_per_tooth)


def generate_test_path(params: GeneratorParams) -> Toolpath:
    v_prog = _resolve_feed(params)
    logger.info(f"Generating {params.kind} path at {v_prog * 60:.3f} m/min")

    match params.kind:
        case PathKind.CIRCLE:
            return chain_tangent_arcs(params.center, [params.radius], [TWO_PI], params.incline,
                                      params.direction, v_prog)
        case PathKind.SEMISPIRAL | PathKind.QUARTERSPIRAL:
            step = params.step if params.step is not None else DEFAULT_STEPS[params.kind.value]
            radii = spiral_radii(params.r_start, params.r_end, step)
            span = math.pi if params.kind is PathKind.SEMISPIRAL else HALF_PI
            return chain_tangent_arcs(params.center, radii, [span] * len(radii), params.incline,
                                      params.direction, v_prog)
        case PathKind.BORE:
            return _bore_path(params, v_prog)


def _bore_path(params: GeneratorParams, v_prog: float) -> Toolpath:
    bore_radius = 0.5 * (params.bore_diameter - params.tool_diameter)
    if bore_radius <= 0 or params.approach_radius <= 0 or params.approach_span <= 0:
        raise ZeroLengthArcError()

    # Approach and clearance arcs share one centre and meet the bore circle at the incline angle.
    junction = params.incline
    u_x, u_y = unit_radial(junction)
    shift = bore_radius - params.approach_radius
    approach_center = (params.center[0] + shift * u_x, params.center[1] + shift * u_y)
    alpha0 = junction - params.direction.sign * params.approach_span
    return chain_tangent_arcs(
        approach_center,
        [params.approach_radius, bore_radius, params.approach_radius],
        [params.approach_span, TWO_PI, params.approach_span],
        alpha0,
        params.direction,
        v_prog,
    )
