import json
import math
from pathlib import Path
from typing import Any

import click
import pandas as pd

from commands.shared import exit_on_error
from helpers.angles import TWO_PI
from helpers.units import mm_min_to_m_s, mm_to_m
from models.machine import MachineParameters
from models.toolpath import ArcBlock, Direction
from services.limits import (
    axis_feed_limit,
    feed_from_accel,
    feed_from_jerk,
    feed_setpoint,
    normal_accel_limit,
    static_lookahead,
    sweep_static_lookahead,
    tangential_jerk_limit,
)
from services.machine_loader import load_machine


def _m_min(value: float) -> float:
    return round(value * 60.0, 6)


def _terms_at(alpha: float, r: float, caps: MachineParameters) -> dict[str, float]:
    return {
        'alpha_deg': math.degrees(alpha),
        'vt_m_min': _m_min(axis_feed_limit(alpha, caps)),
        'van_m_min': _m_min(feed_from_accel(normal_accel_limit(alpha, caps), r)),
        'vjt_m_min': _m_min(feed_from_jerk(tangential_jerk_limit(alpha, caps), r)),
        'vs_m_min': _m_min(static_lookahead(alpha, r, caps)),
    }


def _sweep_report(r: float, caps: MachineParameters, samples: int, csv_file: Path | None) -> dict[str, Any]:
    sweep = sweep_static_lookahead(r, caps, samples)
    if csv_file is not None:
        pd.DataFrame({
            'alpha_deg': [math.degrees(alpha) for alpha in sweep.alpha],
            'vt_m_min': [v * 60.0 for v in sweep.v_t],
            'van_m_min': [v * 60.0 for v in sweep.v_an],
            'vjt_m_min': [v * 60.0 for v in sweep.v_jt],
            'vs_m_min': [v * 60.0 for v in sweep.v_s],
        }).to_csv(csv_file, index=False, float_format='%.9g')

    def extreme(pick: tuple[float, float]) -> dict[str, float]:
        alpha, value = pick
        return {'alpha_deg': round(math.degrees(alpha), 6), 'm_min': _m_min(value)}

    return {
        'vt_max': extreme(sweep.argmax('v_t')),
        'van_max': extreme(sweep.argmax('v_an')),
        'vjt_min': extreme(sweep.argmin('v_jt')),
        'vs_min': extreme(sweep.argmin('v_s')),
    }


@click.command('limits')
@click.option('--machine', type=click.Path(path_type=Path), required=True, help="Machine parameter JSON.")
@click.option('--radius-mm', type=float, required=True)
@click.option('--feed-mm-min', type=float, required=True)
@click.option('--direction', type=click.Choice([d.value for d in Direction]), default=Direction.CCW.value,
              show_default=True)
@click.option('--alpha-deg', type=float, help="Report the angle-dependent limits at this angular position.")
@click.option('--sweep', is_flag=True, help="Sweep the static look-ahead over a full turn.")
@click.option('--samples', type=click.IntRange(min=2), default=3601, show_default=True)
@click.option('--sweep-csv', type=click.Path(path_type=Path), help="Write the sweep curves to CSV.")
@exit_on_error
def limits_command(machine: Path, radius_mm: float, feed_mm_min: float, direction: str, alpha_deg: float | None,
                   sweep: bool, samples: int, sweep_csv: Path | None) -> None:
    """Feed-rate set point of a full circle with every limiting term."""
    caps = load_machine(machine)
    r = mm_to_m(radius_mm)
    heading = Direction(direction)
    block = ArcBlock(
        center=(0.0, 0.0), r=r, alpha_start=0.0, alpha_end=heading.sign * TWO_PI,
        direction=heading, v_prog=mm_min_to_m_s(feed_mm_min),
    )
    breakdown = feed_setpoint(block, caps, caps.ncu)
    report: dict[str, Any] = {
        'r_mm': radius_mm,
        'v_st_m_min': _m_min(breakdown.v_st),
        'binding': str(breakdown.binding),
        'alpha_eval_deg': round(math.degrees(breakdown.alpha_eval), 6),
        'converged': breakdown.converged,
        'limits_m_min': {str(term): _m_min(value) for term, value in breakdown.terms().items()},
    }
    if alpha_deg is not None:
        report['at_alpha'] = _terms_at(math.radians(alpha_deg), r, caps)
    if sweep:
        report['sweep'] = _sweep_report(r, caps, samples, sweep_csv)
    click.echo(json.dumps(report, indent=2))
