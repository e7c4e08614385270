import json
import logging
from pathlib import Path
from typing import Any

from pydantic import ValidationError

from config import LOGGER_NAME
from helpers.units import m_s_to_mm_min, mm_min_to_m_s, ms_to_s, s_to_ms
from models.file_schemas import FILE_FIELD_NAMES, MachineFileSchema
from models.machine import AxisCapacity, MachineParameters, NcuSettings
from services.exceptions import MachineConfigError

logger = logging.getLogger(LOGGER_NAME)


def _field_path(location: tuple[int | str, ...]) -> str:
    parts: list[str] = []
    for item in location:
        if isinstance(item, int):
            parts[-1] = f"{parts[-1]}[{item}]" if parts else f"[{item}]"
        else:
            parts.append(FILE_FIELD_NAMES.get(item, item))
    return '.'.join(parts)


def machine_from_dict(data: Any) -> MachineParameters:
    try:
        schema = MachineFileSchema.model_validate(data)
    except ValidationError as err:
        first = err.errors()[0]
        field = _field_path(tuple(first['loc']))
        logger.warning(f"Machine file validation error: {err.errors()}")
        raise MachineConfigError(first['msg'], field=field) from err

    axes = tuple(
        AxisCapacity(
            name=axis.name,
            v_max=mm_min_to_m_s(axis.vmax_mm_min),
            a_max=axis.amax_m_s2,
            j_max=axis.jmax_m_s3,
        )
        for axis in schema.axes
    )
    t_cy = ms_to_s(schema.ncu.tcy_ms)
    delta_t = ms_to_s(schema.ncu.dt_ms) if schema.ncu.dt_ms is not None else t_cy
    ncu = NcuSettings(
        j_curv=schema.ncu.jcurv_m_s3,
        r_jct=schema.ncu.rjct,
        r_jcc=schema.ncu.rjcc,
        t_cy=t_cy,
        delta_t=delta_t,
    )
    try:
        return MachineParameters(axes=axes, ncu=ncu)
    except ValidationError as err:
        raise MachineConfigError(err.errors()[0]['msg'], field='axes') from err


def machine_to_dict(params: MachineParameters) -> dict[str, Any]:
    return {
        'axes': [
            {
                'name': axis.name,
                'vmax_mm_min': m_s_to_mm_min(axis.v_max),
                'amax_m_s2': axis.a_max,
                'jmax_m_s3': axis.j_max,
            }
            for axis in params.axes
        ],
        'ncu': {
            'jcurv_m_s3': params.ncu.j_curv,
            'rjct': params.ncu.r_jct,
            'rjcc': params.ncu.r_jcc,
            'tcy_ms': s_to_ms(params.ncu.t_cy),
            'dt_ms': s_to_ms(params.ncu.delta_t),
        },
    }


def load_machine(path: str | Path) -> MachineParameters:
    machine_path = Path(path)
    if not machine_path.is_file():
        raise MachineConfigError(f"Machine file not found: {machine_path}", field='path')

    try:
        data = json.loads(machine_path.read_text(encoding='utf-8'))
    except json.JSONDecodeError as err:
        raise MachineConfigError(f"Invalid JSON ({err.msg} at line {err.lineno})", field='path') from err

    params = machine_from_dict(data)
    logger.info(f"Loaded machine {machine_path.name}: X {params.x}, Y {params.y}, NCU {params.ncu}")
    return params


def save_machine(params: MachineParameters, path: str | Path) -> None:
    Path(path).write_text(json.dumps(machine_to_dict(params), indent=2) + '\n', encoding='utf-8')
