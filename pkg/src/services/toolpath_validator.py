import math
from enum import StrEnum

from pydantic import BaseModel, ConfigDict

from models.toolpath import ArcBlock, Toolpath
from services.exceptions import ContinuityError

POSITION_TOLERANCE = 1e-9
TANGENT_TOLERANCE = 1e-9


class ViolationKind(StrEnum):
    RADIUS = 'radius'
    SPAN = 'span'
    FEED = 'feed'
    DIRECTION = 'direction'
    POSITION = 'position_continuity'
    TANGENT = 'tangent_continuity'


class Violation(BaseModel):
    model_config = ConfigDict(frozen=True)

    kind: ViolationKind
    block_index: int
    magnitude: float
    message: str


def _block_violations(index: int, block: ArcBlock) -> list[Violation]:
    violations: list[Violation] = []
    if not block.r > 0:
        violations.append(Violation(kind=ViolationKind.RADIUS, block_index=index, magnitude=block.r,
                                    message=f"Radius must be positive, got {block.r}"))
    span = block.alpha_end - block.alpha_start
    if span == 0:
        violations.append(Violation(kind=ViolationKind.SPAN, block_index=index, magnitude=0.0,
                                    message="Arc span is zero"))
    elif math.copysign(1.0, span) != block.direction.sign:
        violations.append(Violation(kind=ViolationKind.DIRECTION, block_index=index, magnitude=span,
                                    message=f"Span sign disagrees with direction {block.direction}"))
    if not block.v_prog > 0:
        violations.append(Violation(kind=ViolationKind.FEED, block_index=index, magnitude=block.v_prog,
                                    message=f"Programmed feed must be positive, got {block.v_prog}"))
    return violations


def junction_gaps(upstream: ArcBlock, downstream: ArcBlock) -> tuple[float, float]:
    end_x, end_y = upstream.end_point
    start_x, start_y = downstream.start_point
    position_gap = math.hypot(start_x - end_x, start_y - end_y)

    t1 = upstream.tangent_at(upstream.alpha_end)
    t2 = downstream.tangent_at(downstream.alpha_start)
    cross = t1[0] * t2[1] - t1[1] * t2[0]
    dot = t1[0] * t2[0] + t1[1] * t2[1]
    return position_gap, abs(math.atan2(cross, dot))


def validate(path: Toolpath) -> list[Violation]:
    violations: list[Violation] = []
    for index, block in enumerate(path.blocks):
        violations.extend(_block_violations(index, block))

    for index in range(1, len(path.blocks)):
        upstream, downstream = path.blocks[index - 1], path.blocks[index]
        if upstream.r <= 0 or downstream.r <= 0:
            continue
        position_gap, angle_gap = junction_gaps(upstream, downstream)
        if position_gap > POSITION_TOLERANCE:
            violations.append(Violation(kind=ViolationKind.POSITION, block_index=index, magnitude=position_gap,
                                        message=f"End of block {index - 1} is {position_gap:.3e} m from start of block {index}"))
        if angle_gap > TANGENT_TOLERANCE:
            violations.append(Violation(kind=ViolationKind.TANGENT, block_index=index, magnitude=angle_gap,
                                        message=f"Tangent jumps by {math.degrees(angle_gap):.4f} deg entering block {index}"))
    return violations


def ensure_continuous(path: Toolpath) -> Toolpath:
    for index in range(1, len(path.blocks)):
        position_gap, angle_gap = junction_gaps(path.blocks[index - 1], path.blocks[index])
        if position_gap > POSITION_TOLERANCE or angle_gap > TANGENT_TOLERANCE:
            raise ContinuityError(index, position_gap, angle_gap)
    return path
