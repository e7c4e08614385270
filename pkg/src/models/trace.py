from dataclasses import dataclass

import numpy as np
import numpy.typing as npt

from models.plan import BlockPlan, Junction, LimitBreakdown

FloatArray = npt.NDArray[np.float64]
IntArray = npt.NDArray[np.int64]

TRACE_COLUMNS = ('t_s', 's_m', 'x_mm', 'y_mm', 'v_m_min', 'at_m_s2', 'an_m_s2', 'jt_m_s3', 'block')


@dataclass(frozen=True)
class KinematicTrace:
    t: FloatArray
    s: FloatArray
    x: FloatArray
    y: FloatArray
    v_f: FloatArray
    a_t: FloatArray
    a_n: FloatArray
    j_t: FloatArray
    block_index: IntArray

    def __len__(self) -> int:
        return int(self.t.size)


@dataclass(frozen=True)
class SimulationResult:
    breakdowns: list[LimitBreakdown]
    junctions: list[Junction]
    plans: list[BlockPlan]
    trace: KinematicTrace
    total_time: float

    @property
    def block_times(self) -> list[float]:
        return [plan.duration for plan in self.plans]
