import math
from enum import StrEnum

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from helpers.angles import normalize_angle


class Direction(StrEnum):
    # Increasing angular position travels clockwise in the XY plane.
    CW = 'cw'
    CCW = 'ccw'

    @property
    def sign(self) -> float:
        return 1.0 if self is Direction.CW else -1.0


class AngularPosition(BaseModel):
    model_config = ConfigDict(frozen=True)

    alpha_c: float

    @field_validator('alpha_c')
    def wrap(cls, value: float) -> float:
        return normalize_angle(value)


class ArcBlock(BaseModel):
    """Circular block in the XY plane.

    Angular positions follow the convention P(alpha) = center + r * (sin alpha, cos alpha),
    under which the axis-limit formulas hold as printed. The signed span alpha_end - alpha_start
    is positive for CW travel and negative for CCW travel.
    """

    model_config = ConfigDict(frozen=True)

    center: tuple[float, float]
    r: float = Field(gt=0, description="Radius of curvature (m)")
    alpha_start: float
    alpha_end: float
    direction: Direction
    v_prog: float = Field(gt=0, description="Programmed feed rate (m/s)")

    @model_validator(mode='after')
    def check_span(self) -> 'ArcBlock':
        if abs(self.alpha_end - self.alpha_start) <= 0.0:
            raise ValueError("Arc span must be non-zero")
        if math.copysign(1.0, self.alpha_end - self.alpha_start) != self.direction.sign:
            raise ValueError(f"Angular span sign disagrees with direction {self.direction}")
        return self

    @property
    def span(self) -> float:
        return self.alpha_end - self.alpha_start

    @property
    def length(self) -> float:
        return self.r * abs(self.span)

    def alpha_at(self, s: float) -> float:
        return self.alpha_start + self.direction.sign * s / self.r

    def point_at(self, alpha: float) -> tuple[float, float]:
        return (
            self.center[0] + self.r * math.sin(alpha),
            self.center[1] + self.r * math.cos(alpha),
        )

    def tangent_at(self, alpha: float) -> tuple[float, float]:
        sign = self.direction.sign
        return sign * math.cos(alpha), -sign * math.sin(alpha)

    @property
    def start_point(self) -> tuple[float, float]:
        return self.point_at(self.alpha_start)

    @property
    def end_point(self) -> tuple[float, float]:
        return self.point_at(self.alpha_end)


class Toolpath(BaseModel):
    model_config = ConfigDict(frozen=True)

    blocks: tuple[ArcBlock, ...]

    @property
    def length(self) -> float:
        return sum(block.length for block in self.blocks)

    def __len__(self) -> int:
        return len(self.blocks)
