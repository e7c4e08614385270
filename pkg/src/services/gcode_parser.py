import logging
import math
import re

from config import LOGGER_NAME
from helpers.angles import TWO_PI, normalize_angle
from helpers.units import mm_min_to_m_s, mm_to_m
from models.toolpath import ArcBlock, Direction, Toolpath
from services.exceptions import ToolpathError, UnsupportedGcodeError, ZeroLengthArcError
from services.toolpath_validator import ensure_continuous

logger = logging.getLogger(LOGGER_NAME)

WORD_PATTERN = re.compile(r'([A-Z])\s*([-+]?(?:\d+\.?\d*|\.\d+))')
COMMENT_PATTERN = re.compile(r'\([^)]*\)|;.*$')
ACCEPTED_G_CODES = {17, 21, 90, 94}
ARC_CODES = {2: Direction.CW, 3: Direction.CCW}
CLOSURE_TOLERANCE = 1e-9
RADIUS_TOLERANCE = 1e-6


class GcodeState:
    def __init__(self, start: tuple[float, float]) -> None:
        self.x, self.y = start
        self.motion: Direction | None = None
        self.feed: float | None = None


def _arc_span(alpha_start: float, alpha_end: float, direction: Direction, closed: bool) -> float:
    if closed:
        return direction.sign * TWO_PI
    # Positive angular travel is clockwise in the XY plane.
    if direction is Direction.CW:
        return normalize_angle(alpha_end - alpha_start) or TWO_PI
    return -(normalize_angle(alpha_start - alpha_end) or TWO_PI)


def _parse_line(line: str, line_number: int) -> dict[str, list[float]]:
    words: dict[str, list[float]] = {}
    stripped = COMMENT_PATTERN.sub('', line.upper()).strip()
    position = 0
    for match in WORD_PATTERN.finditer(stripped):
        gap = stripped[position:match.start()].strip()
        if gap:
            raise UnsupportedGcodeError(gap, line_number)
        words.setdefault(match.group(1), []).append(float(match.group(2)))
        position = match.end()
    trailing = stripped[position:].strip()
    if trailing:
        raise UnsupportedGcodeError(trailing, line_number)
    return words


def parse_gcode(text: str, start: tuple[float, float] = (0.0, 0.0)) -> Toolpath:
    """Parse a G17 arc-only dialect (G2/G3 with X Y I J F, mm and mm/min) into SI arc blocks.

    `start` is the initial tool position in mm.
    """
    state = GcodeState(start)
    blocks: list[ArcBlock] = []

    for line_number, line in enumerate(text.splitlines(), start=1):
        words = _parse_line(line, line_number)
        if not words:
            continue

        for code in words.pop('G', []):
            if code.is_integer() and int(code) in ARC_CODES:
                state.motion = ARC_CODES[int(code)]
            elif code.is_integer() and int(code) in (0, 1):
                raise UnsupportedGcodeError(f"G{int(code)} (linear moves are not simulated)", line_number)
            elif not (code.is_integer() and int(code) in ACCEPTED_G_CODES):
                raise UnsupportedGcodeError(f"G{code:g}", line_number)

        if 'F' in words:
            state.feed = words.pop('F')[-1]
        words.pop('N', None)

        unknown = set(words) - {'X', 'Y', 'I', 'J'}
        if unknown:
            raise UnsupportedGcodeError(sorted(unknown)[0], line_number)
        if not words:
            continue
        if state.motion is None:
            raise ToolpathError(f"Line {line_number}: coordinates given without an active G2/G3 motion.")
        if state.feed is None:
            raise ToolpathError(f"Line {line_number}: arc programmed before any F word.")

        blocks.append(_arc_block(state, words, line_number, len(blocks)))

    if not blocks:
        raise ToolpathError("No arc blocks found in G-code.")
    logger.info(f"Parsed {len(blocks)} arc blocks from G-code")
    return ensure_continuous(Toolpath(blocks=tuple(blocks)))


def _arc_block(state: GcodeState, words: dict[str, list[float]], line_number: int, index: int) -> ArcBlock:
    assert state.motion is not None and state.feed is not None
    x_end = words.get('X', [state.x])[-1]
    y_end = words.get('Y', [state.y])[-1]
    cx = state.x + words.get('I', [0.0])[-1]
    cy = state.y + words.get('J', [0.0])[-1]

    r_start = math.hypot(state.x - cx, state.y - cy)
    r_end = math.hypot(x_end - cx, y_end - cy)
    if r_start <= 0:
        raise ZeroLengthArcError(index)
    if abs(r_start - r_end) > RADIUS_TOLERANCE * 1000:
        raise ToolpathError(f"Line {line_number}: start radius {r_start:g} mm and end radius {r_end:g} mm differ.")

    alpha_start = normalize_angle(math.atan2(state.x - cx, state.y - cy))
    alpha_end = math.atan2(x_end - cx, y_end - cy)
    closed = math.hypot(x_end - state.x, y_end - state.y) <= CLOSURE_TOLERANCE * 1000
    span = _arc_span(alpha_start, alpha_end, state.motion, closed)

    state.x, state.y = x_end, y_end
    return ArcBlock(
        center=(mm_to_m(cx), mm_to_m(cy)),
        r=mm_to_m(r_start),
        alpha_start=alpha_start,
        alpha_end=alpha_start + span,
        direction=state.motion,
        v_prog=mm_min_to_m_s(state.feed),
    )
