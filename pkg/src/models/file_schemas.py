from pydantic import BaseModel, ConfigDict, Field

from models.toolpath import Direction

# File field name -> domain field name, used when reporting validation errors.
FILE_FIELD_NAMES: dict[str, str] = {
    'vmax_mm_min': 'v_max',
    'amax_m_s2': 'a_max',
    'jmax_m_s3': 'j_max',
    'jcurv_m_s3': 'j_curv',
    'rjct': 'r_jct',
    'rjcc': 'r_jcc',
    'tcy_ms': 't_cy',
    'dt_ms': 'delta_t',
}


class AxisFileSchema(BaseModel):
    model_config = ConfigDict(extra='allow')

    name: str = Field(pattern=r'^[XYZABC]$')
    vmax_mm_min: float = Field(gt=0, description="Maximum axis feed rate (mm/min)")
    amax_m_s2: float = Field(gt=0, description="Maximum axis acceleration (m/s^2)")
    jmax_m_s3: float = Field(gt=0, description="Maximum axis jerk (m/s^3)")


class NcuFileSchema(BaseModel):
    jcurv_m_s3: float = Field(gt=0)
    rjct: float = Field(gt=0, le=1)
    rjcc: float = Field(ge=0, le=1)
    tcy_ms: float = Field(gt=0)
    dt_ms: float | None = Field(default=None, gt=0, description="Defaults to the cycle time")


class MachineFileSchema(BaseModel):
    # Spindle and tool-holder sections are tolerated and ignored.
    model_config = ConfigDict(extra='allow')

    axes: list[AxisFileSchema] = Field(min_length=2)
    ncu: NcuFileSchema


class ArcFileSchema(BaseModel):
    cx_mm: float
    cy_mm: float
    r_mm: float = Field(gt=0)
    a_start_deg: float
    a_end_deg: float
    dir: Direction
    feed_mm_min: float = Field(gt=0)


class BlockSummary(BaseModel):
    index: int
    r_mm: float
    v_st_m_min: float
    binding: str
    alpha_eval_deg: float
    converged: bool
    limits_m_min: dict[str, float]
    v_entry_m_min: float
    v_peak_m_min: float
    v_exit_m_min: float
    has_phase_b: bool
    j_used_m_s3: float
    durations_s: tuple[float, float, float]
    lengths_mm: tuple[float, float, float]
    duration_s: float
    accel_capacity_exceeded: bool


class JunctionSummary(BaseModel):
    index: int
    r1_mm: float
    r2_mm: float
    alpha_deg: float
    jt_m_s3: float
    vfr_m_min: float | None
    v_crossing_m_min: float
    v_planned_m_min: float


class RunSummary(BaseModel):
    total_time_s: float
    block_times_s: list[float]
    blocks: list[BlockSummary]
    junctions: list[JunctionSummary]


class CircularitySummary(BaseModel):
    g_um: float
    fmax_um: float
    fmin_um: float
    center_mm: tuple[float, float]
    radius_mm: float
    center_from_fit: bool
    radius_from_fit: bool
