import functools
import logging
import math
from collections.abc import Callable
from typing import Any, ParamSpec, TypeVar

import click
from pydantic import ValidationError
from termcolor import colored

from config import LOGGER_NAME
from helpers.units import mm_min_to_m_s, mm_to_m
from models.toolpath import Direction
from services.exceptions import ArcSimError, InfeasiblePlanError
from services.toolpath_generator import GeneratorParams, PathKind

logger = logging.getLogger(LOGGER_NAME)

P = ParamSpec('P')
R = TypeVar('R')

EXIT_VALIDATION = 1
EXIT_INFEASIBLE = 2


def echo_error(message: str) -> None:
    click.echo(colored(f"error: {message}", 'red'), err=True)


def _validation_message(err: ValidationError) -> str:
    first = err.errors()[0]
    location = '.'.join(str(part) for part in first['loc'])
    return f"{location}: {first['msg']}" if location else first['msg']


def exit_on_error(command: Callable[P, R]) -> Callable[P, R]:
    """Translate domain errors into exit statuses: 2 for infeasible plans, 1 for invalid input."""
    @functools.wraps(command)
    def wrapper(*args: P.args, **kwargs: P.kwargs) -> R:
        try:
            return command(*args, **kwargs)
        except InfeasiblePlanError as err:
            logger.error(f"Infeasible plan: {err}")
            echo_error(str(err))
            raise SystemExit(EXIT_INFEASIBLE) from err
        except ValidationError as err:
            echo_error(_validation_message(err))
            raise SystemExit(EXIT_VALIDATION) from err
        except (ArcSimError, ValueError) as err:
            echo_error(str(err))
            raise SystemExit(EXIT_VALIDATION) from err
    return wrapper


def generator_options(command: Callable[..., Any]) -> Callable[..., Any]:
    options = [
        click.option('--generate', 'kind', type=click.Choice([kind.value for kind in PathKind]),
                     help="Generate a test path instead of reading one."),
        click.option('--feed-mm-min', type=float, help="Programmed feed rate (mm/min)."),
        click.option('--direction', type=click.Choice([d.value for d in Direction]), default=Direction.CCW.value,
                     show_default=True),
        click.option('--incline-deg', type=float, default=0.0, show_default=True,
                     help="Angular position of the first junction (deg)."),
        click.option('--radius-mm', type=float, default=30.0, show_default=True, help="Circle radius (mm)."),
        click.option('--r-start-mm', type=float, default=10.0, show_default=True, help="First spiral radius (mm)."),
        click.option('--r-end-mm', type=float, default=30.0, show_default=True, help="Last spiral radius (mm)."),
        click.option('--step-mm', type=float, help="Spiral radius increment (mm)."),
        click.option('--tool-diameter-mm', type=float, default=20.0, show_default=True),
        click.option('--bore-diameter-mm', type=float, default=25.0, show_default=True),
        click.option('--approach-radius-mm', type=float, default=1.5, show_default=True),
        click.option('--approach-span-deg', type=float, default=90.0, show_default=True),
        click.option('--cutting-speed-m-min', type=float, help="Cutting speed used to derive the bore feed (m/min)."),
        click.option('--teeth', type=int, default=4, show_default=True),
        click.option('--feed-per-tooth-mm', type=float, default=0.2, show_default=True),
    ]
    for option in reversed(options):
        command = option(command)
    return command


def generator_params(options: dict[str, Any]) -> GeneratorParams | None:
    if options['kind'] is None:
        return None
    feed = options['feed_mm_min']
    cutting_speed = options['cutting_speed_m_min']
    step = options['step_mm']
    return GeneratorParams(
        kind=PathKind(options['kind']),
        v_prog=None if feed is None else mm_min_to_m_s(feed),
        direction=Direction(options['direction']),
        incline=math.radians(options['incline_deg']),
        radius=mm_to_m(options['radius_mm']),
        r_start=mm_to_m(options['r_start_mm']),
        r_end=mm_to_m(options['r_end_mm']),
        step=None if step is None else mm_to_m(step),
        tool_diameter=mm_to_m(options['tool_diameter_mm']),
        bore_diameter=mm_to_m(options['bore_diameter_mm']),
        approach_radius=mm_to_m(options['approach_radius_mm']),
        approach_span=math.radians(options['approach_span_deg']),
        cutting_speed=None if cutting_speed is None else cutting_speed / 60.0,
        teeth=options['teeth'],
        feed_per_tooth=mm_to_m(options['feed_per_tooth_mm']),
    )


GENERATOR_KEYS = (
    'kind', 'feed_mm_min', 'direction', 'incline_deg', 'radius_mm', 'r_start_mm', 'r_end_mm', 'step_mm',
    'tool_diameter_mm', 'bore_diameter_mm', 'approach_radius_mm', 'approach_span_deg',
    'cutting_speed_m_min', 'teeth', 'feed_per_tooth_mm',
)


def pop_generator_options(kwargs: dict[str, Any]) -> dict[str, Any]:
    return {key: kwargs.pop(key) for key in GENERATOR_KEYS}
