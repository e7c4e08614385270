import logging
import math
from pathlib import Path

import numpy as np
import numpy.typing as npt
import pandas as pd

from config import LOGGER_NAME
from models.file_schemas import BlockSummary, CircularitySummary, JunctionSummary, RunSummary
from models.metrics import CircularityReport
from models.toolpath import Toolpath
from models.trace import TRACE_COLUMNS, KinematicTrace, SimulationResult
from services.exceptions import DegenerateFitError

logger = logging.getLogger(LOGGER_NAME)

FLOAT_FORMAT = '%.9g'


def trace_frame(trace: KinematicTrace) -> pd.DataFrame:
    return pd.DataFrame({
        't_s': trace.t,
        's_m': trace.s,
        'x_mm': trace.x * 1e3,
        'y_mm': trace.y * 1e3,
        'v_m_min': trace.v_f * 60.0,
        'at_m_s2': trace.a_t,
        'an_m_s2': trace.a_n,
        'jt_m_s3': trace.j_t,
        'block': trace.block_index,
    }, columns=list(TRACE_COLUMNS))


def write_trace_csv(trace: KinematicTrace, path: str | Path) -> None:
    trace_frame(trace).to_csv(path, index=False, float_format=FLOAT_FORMAT)
    logger.info(f"Trace written to {path} ({len(trace)} rows)")


def _m_min(value: float) -> float:
    return value * 60.0


def _mm(value: float) -> float:
    return value * 1e3


def build_summary(toolpath: Toolpath, result: SimulationResult) -> RunSummary:
    blocks = [
        BlockSummary(
            index=i,
            r_mm=_mm(block.r),
            v_st_m_min=_m_min(breakdown.v_st),
            binding=str(breakdown.binding),
            alpha_eval_deg=math.degrees(breakdown.alpha_eval),
            converged=breakdown.converged,
            limits_m_min={str(term): _m_min(value) for term, value in breakdown.terms().items()},
            v_entry_m_min=_m_min(plan.v_entry),
            v_peak_m_min=_m_min(plan.v_peak),
            v_exit_m_min=_m_min(plan.v_exit),
            has_phase_b=plan.has_phase_b,
            j_used_m_s3=plan.j_used,
            durations_s=plan.durations,
            lengths_mm=(_mm(plan.lengths[0]), _mm(plan.lengths[1]), _mm(plan.lengths[2])),
            duration_s=plan.duration,
            accel_capacity_exceeded=plan.accel_capacity_exceeded,
        )
        for i, (block, breakdown, plan) in enumerate(zip(toolpath.blocks, result.breakdowns, result.plans))
    ]
    junctions = [
        JunctionSummary(
            index=junction.index,
            r1_mm=_mm(junction.r1),
            r2_mm=_mm(junction.r2),
            alpha_deg=math.degrees(junction.alpha),
            jt_m_s3=junction.j_t,
            vfr_m_min=None if junction.v_fr is None else _m_min(junction.v_fr),
            v_crossing_m_min=_m_min(junction.v_crossing),
            v_planned_m_min=_m_min(junction.v_planned),
        )
        for junction in result.junctions
    ]
    return RunSummary(
        total_time_s=result.total_time,
        block_times_s=result.block_times,
        blocks=blocks,
        junctions=junctions,
    )


def write_summary_json(toolpath: Toolpath, result: SimulationResult, path: str | Path) -> None:
    Path(path).write_text(build_summary(toolpath, result).model_dump_json(indent=2) + '\n')
    logger.info(f"Summary written to {path}")


def circularity_summary(report: CircularityReport) -> CircularitySummary:
    return CircularitySummary(
        g_um=report.g * 1e6,
        fmax_um=report.f_max * 1e6,
        fmin_um=report.f_min * 1e6,
        center_mm=(_mm(report.center[0]), _mm(report.center[1])),
        radius_mm=_mm(report.radius),
        center_from_fit=report.center_from_fit,
        radius_from_fit=report.radius_from_fit,
    )


def read_points_csv(path: str | Path) -> npt.NDArray[np.float64]:
    """XY points in metres from a trace CSV (x_mm, y_mm columns) or a bare two-column CSV in mm."""
    frame = pd.read_csv(path)
    if {'x_mm', 'y_mm'} <= set(frame.columns):
        xy = frame[['x_mm', 'y_mm']]
    else:
        frame = pd.read_csv(path, header=None)
        if frame.shape[1] != 2:
            raise DegenerateFitError(f"{path}: expected x_mm/y_mm columns or exactly two columns")
        xy = frame
    try:
        values = xy.to_numpy(dtype=np.float64)
    except ValueError as err:
        raise DegenerateFitError(f"{path}: non-numeric coordinates") from err
    return values * 1e-3
