from pydantic import BaseModel, ConfigDict, Field, model_validator

PLANAR_AXES = ('X', 'Y')


class AxisCapacity(BaseModel):
    model_config = ConfigDict(frozen=True)

    name: str = Field(pattern=r'^[XYZABC]$', description="Axis label")
    v_max: float = Field(gt=0, description="Maximum axis feed rate (m/s)")
    a_max: float = Field(gt=0, description="Maximum axis acceleration (m/s^2)")
    j_max: float = Field(gt=0, description="Maximum axis jerk (m/s^3)")


class NcuSettings(BaseModel):
    model_config = ConfigDict(frozen=True)

    j_curv: float = Field(gt=0, description="Curvilinear jerk (m/s^3)")
    r_jct: float = Field(gt=0, le=1, description="Share of curvilinear jerk allowed as tangential jerk")
    # Stored for completeness; no feed computation depends on the central-jerk rate.
    r_jcc: float = Field(ge=0, le=1, description="Share of curvilinear jerk allowed as central jerk")
    t_cy: float = Field(gt=0, description="Interpolator cycle time (s)")
    delta_t: float = Field(gt=0, description="Curvature-discontinuity crossing time (s)")


class MachineParameters(BaseModel):
    model_config = ConfigDict(frozen=True)

    axes: tuple[AxisCapacity, ...]
    ncu: NcuSettings

    @model_validator(mode='after')
    def check_planar_axes(self) -> 'MachineParameters':
        names = [axis.name for axis in self.axes]
        if len(names) != len(set(names)):
            raise ValueError(f"Duplicate axis labels: {names}")
        missing = [name for name in PLANAR_AXES if name not in names]
        if missing:
            raise ValueError(f"Missing planar axes: {', '.join(missing)}")
        return self

    def axis(self, name: str) -> AxisCapacity:
        for capacity in self.axes:
            if capacity.name == name:
                return capacity
        raise KeyError(name)

    @property
    def x(self) -> AxisCapacity:
        return self.axis('X')

    @property
    def y(self) -> AxisCapacity:
        return self.axis('Y')
