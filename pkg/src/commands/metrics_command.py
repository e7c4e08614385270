from pathlib import Path

import click

from commands.shared import exit_on_error
from helpers.units import mm_to_m
from services.circularity import circularity_report
from services.trace_writer import circularity_summary, read_points_csv


@click.command('metrics')
@click.argument('points_file', type=click.Path(exists=True, dir_okay=False, path_type=Path))
@click.option('--center-mm', type=(float, float), help="Nominal circle center; defaults to the fitted one.")
@click.option('--radius-mm', type=float, help="Nominal circle radius; defaults to the fitted one.")
@click.option('--out', 'out_file', type=click.Path(path_type=Path), help="Also write the report JSON here.")
@exit_on_error
def metrics_command(points_file: Path, center_mm: tuple[float, float] | None, radius_mm: float | None,
                    out_file: Path | None) -> None:
    """Circularity G and radial deviations Fmax/Fmin of an XY point set."""
    points = read_points_csv(points_file)
    center = None if center_mm is None else (mm_to_m(center_mm[0]), mm_to_m(center_mm[1]))
    radius = None if radius_mm is None else mm_to_m(radius_mm)
    report = circularity_report(points, center, radius)
    payload = circularity_summary(report).model_dump_json(indent=2)
    if out_file is not None:
        out_file.write_text(payload + '\n')
    click.echo(payload)
