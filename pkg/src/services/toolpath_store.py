import json
import math
from pathlib import Path
from typing import Any

from pydantic import TypeAdapter, ValidationError

from helpers.units import m_s_to_mm_min, m_to_mm, mm_min_to_m_s, mm_to_m
from models.file_schemas import ArcFileSchema
from models.toolpath import ArcBlock, Toolpath
from services.exceptions import ToolpathError, ZeroLengthArcError
from services.toolpath_validator import ensure_continuous

ARC_LIST_ADAPTER: TypeAdapter[list[ArcFileSchema]] = TypeAdapter(list[ArcFileSchema])


def _signed_span_deg(record: ArcFileSchema) -> float:
    delta = record.a_end_deg - record.a_start_deg
    sign = record.dir.sign
    if delta != 0 and math.fmod(delta, 360.0) == 0:
        return sign * abs(delta)
    if delta == 0 or math.copysign(1.0, delta) != sign:
        return delta + sign * 360.0
    return delta


def toolpath_from_records(data: Any) -> Toolpath:
    try:
        records = ARC_LIST_ADAPTER.validate_python(data)
    except ValidationError as err:
        raise ToolpathError(f"Invalid toolpath file: {err.errors()[0]['loc']}: {err.errors()[0]['msg']}") from err

    blocks: list[ArcBlock] = []
    for index, record in enumerate(records):
        span = math.radians(_signed_span_deg(record))
        if span == 0:
            raise ZeroLengthArcError(index)
        alpha_start = math.radians(record.a_start_deg)
        blocks.append(ArcBlock(
            center=(mm_to_m(record.cx_mm), mm_to_m(record.cy_mm)),
            r=mm_to_m(record.r_mm),
            alpha_start=alpha_start,
            alpha_end=alpha_start + span,
            direction=record.dir,
            v_prog=mm_min_to_m_s(record.feed_mm_min),
        ))
    if not blocks:
        raise ToolpathError("Toolpath file contains no blocks.")
    return ensure_continuous(Toolpath(blocks=tuple(blocks)))


def toolpath_to_records(path: Toolpath) -> list[dict[str, Any]]:
    return [
        {
            'cx_mm': m_to_mm(block.center[0]),
            'cy_mm': m_to_mm(block.center[1]),
            'r_mm': m_to_mm(block.r),
            'a_start_deg': math.degrees(block.alpha_start),
            'a_end_deg': math.degrees(block.alpha_end),
            'dir': block.direction.value,
            'feed_mm_min': m_s_to_mm_min(block.v_prog),
        }
        for block in path.blocks
    ]


def load_toolpath(file: str | Path) -> Toolpath:
    toolpath_file = Path(file)
    if not toolpath_file.is_file():
        raise ToolpathError(f"Toolpath file not found: {toolpath_file}")
    try:
        data = json.loads(toolpath_file.read_text(encoding='utf-8'))
    except json.JSONDecodeError as err:
        raise ToolpathError(f"Invalid JSON in {toolpath_file.name}: {err.msg}") from err
    return toolpath_from_records(data)


def save_toolpath(path: Toolpath, file: str | Path) -> None:
    Path(file).write_text(json.dumps(toolpath_to_records(path), indent=2) + '\n', encoding='utf-8')
