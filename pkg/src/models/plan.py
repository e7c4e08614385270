from enum import StrEnum

from pydantic import BaseModel, ConfigDict, Field, computed_field


class LimitTerm(StrEnum):
    V_PROG = 'v_prog'
    V_JTCURV = 'v_jtcurv'
    V_TCY = 'v_tcy'
    V_T = 'v_t'
    V_AN = 'v_an'
    V_JT = 'v_jt'


class LimitBreakdown(BaseModel):
    model_config = ConfigDict(frozen=True)

    v_t: float = Field(gt=0, description="Limit from axis feed capacity (m/s)")
    v_an: float = Field(gt=0, description="Limit from axis acceleration (m/s)")
    v_jt: float = Field(gt=0, description="Limit from axis jerk (m/s)")
    v_jtcurv: float = Field(gt=0, description="Limit from the NCU tangential jerk setting (m/s)")
    v_tcy: float = Field(gt=0, description="Limit from the interpolator cycle time (m/s)")
    v_prog: float = Field(gt=0, description="Programmed feed rate (m/s)")
    v_st: float = Field(gt=0, description="Feed rate set point (m/s)")
    binding: LimitTerm
    alpha_eval: float = Field(description="Angular position of the angle-dependent terms (rad)")
    converged: bool = True

    def terms(self) -> dict[LimitTerm, float]:
        return {term: getattr(self, term.value) for term in LimitTerm}


class TransitionSpec(BaseModel):
    model_config = ConfigDict(frozen=True)

    r1: float = Field(gt=0, description="Upstream radius (m)")
    r2: float = Field(gt=0, description="Downstream radius (m)")
    alpha: float = Field(description="Junction angular position (rad)")
    v_in_cap: float = Field(gt=0, description="Upstream set point (m/s)")
    v_out_cap: float | None = Field(default=None, gt=0, description="Downstream set point (m/s)")

    @property
    def is_discontinuous(self) -> bool:
        return abs(self.r1 - self.r2) > 1e-12


class Junction(BaseModel):
    model_config = ConfigDict(frozen=True)

    index: int = Field(description="Index of the downstream block")
    r1: float
    r2: float
    alpha: float
    j_t: float
    v_fr: float | None = Field(description="Crossing speed of the curvature jump, None when radii match (m/s)")
    v_crossing: float = Field(description="Effective crossing speed after set-point capping (m/s)")
    v_planned: float = Field(description="Junction speed after the feasibility passes (m/s)")


class BlockPlan(BaseModel):
    model_config = ConfigDict(frozen=True)

    v_entry: float = Field(ge=0)
    v_exit: float = Field(ge=0)
    v_peak: float = Field(ge=0)
    v_st: float = Field(gt=0)
    has_phase_b: bool
    j_used: float = Field(gt=0)
    durations: tuple[float, float, float]
    lengths: tuple[float, float, float]
    accel_capacity_exceeded: bool = False

    @computed_field  # type: ignore[prop-decorator]
    @property
    def duration(self) -> float:
        return sum(self.durations)

    @property
    def length(self) -> float:
        return sum(self.lengths)
