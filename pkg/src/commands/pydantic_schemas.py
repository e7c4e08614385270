from pathlib import Path

from pydantic import BaseModel, ConfigDict, Field, model_validator

from services.toolpath_generator import GeneratorParams


class RunConfig(BaseModel):
    model_config = ConfigDict(frozen=True)

    machine: Path
    path_file: Path | None = None
    gcode_start: tuple[float, float] = Field(default=(0.0, 0.0), description="Initial tool position for G-code input (mm)")
    generator: GeneratorParams | None = None
    sample_step: float = Field(gt=0, description="Trace sampling step (s)")
    trace_file: Path
    summary_file: Path
    plot_file: Path | None = None

    @model_validator(mode='after')
    def check_single_source(self) -> 'RunConfig':
        if (self.path_file is None) == (self.generator is None):
            raise ValueError("Exactly one toolpath source is required: --path or --generate")
        return self
