from pydantic import BaseModel, ConfigDict, Field


class CircleFit(BaseModel):
    model_config = ConfigDict(frozen=True)

    center: tuple[float, float]
    radius: float = Field(gt=0)
    rms_residual: float = Field(ge=0)


class CircularityReport(BaseModel):
    model_config = ConfigDict(frozen=True)

    g: float = Field(ge=0, description="Circularity deviation (m)")
    f_max: float = Field(description="Maximum signed radial deviation, outward positive (m)")
    f_min: float = Field(description="Minimum signed radial deviation (m)")
    deviations: tuple[float, ...]
    center: tuple[float, float]
    radius: float = Field(gt=0)
    center_from_fit: bool = Field(description="True when the nominal center defaulted to the fitted one")
    radius_from_fit: bool = Field(description="True when the nominal radius defaulted to the fitted one")
