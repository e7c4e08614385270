import logging
from pathlib import Path
from typing import Any

import click

from commands.pydantic_schemas import RunConfig
from commands.shared import exit_on_error, generator_options, generator_params, pop_generator_options
from config import LOGGER_NAME, RuntimeSettings
from helpers.feed_plot import plot_feed_profile
from interfaces.toolpath_source import GeneratedToolpathSource, ToolpathSource, file_source
from services.machine_loader import load_machine
from services.simulator import FeedSimulator
from services.trace_writer import write_summary_json, write_trace_csv

logger = logging.getLogger(LOGGER_NAME)


def _source(config: RunConfig) -> ToolpathSource:
    if config.generator is not None:
        return GeneratedToolpathSource(config.generator)
    assert config.path_file is not None
    return file_source(config.path_file, config.gcode_start)


@click.command('simulate')
@click.option('--machine', type=click.Path(path_type=Path), required=True, help="Machine parameter JSON.")
@click.option('--path', 'path_file', type=click.Path(path_type=Path), help="Toolpath JSON or G-code file.")
@click.option('--start-mm', type=(float, float), default=(0.0, 0.0), show_default=True,
              help="Initial tool position for G-code input.")
@generator_options
@click.option('--sample-ms', type=float, help="Trace sampling step (ms); overrides ARCSIM_SAMPLE_MS.")
@click.option('--trace', 'trace_file', type=click.Path(path_type=Path), help="Trace CSV output.")
@click.option('--summary', 'summary_file', type=click.Path(path_type=Path), help="Summary JSON output.")
@click.option('--plot', 'plot_file', type=click.Path(path_type=Path), help="Feed-rate plot SVG output.")
@click.pass_obj
@exit_on_error
def simulate_command(settings: RuntimeSettings, **options: Any) -> None:
    """Plan a toolpath and write its kinematic trace and summary."""
    generator = generator_params(pop_generator_options(options))
    sample_ms = options['sample_ms']
    config = RunConfig(
        machine=options['machine'],
        path_file=options['path_file'],
        gcode_start=options['start_mm'],
        generator=generator,
        sample_step=settings.sample_step_s if sample_ms is None else sample_ms / 1000.0,
        trace_file=options['trace_file'] or settings.trace_file,
        summary_file=options['summary_file'] or settings.summary_file,
        plot_file=options['plot_file'],
    )

    machine = load_machine(config.machine)
    source = _source(config)
    logger.info(f"Simulating {source.describe()}")
    toolpath = source.load()
    result = FeedSimulator(machine).simulate(toolpath, config.sample_step)

    write_trace_csv(result.trace, config.trace_file)
    write_summary_json(toolpath, result, config.summary_file)
    if config.plot_file is not None:
        plot_feed_profile(result.trace, config.plot_file, title=source.describe())

    for index, (breakdown, plan) in enumerate(zip(result.breakdowns, result.plans)):
        click.echo(
            f"block {index}: v_st {breakdown.v_st * 60:.3f} m/min ({breakdown.binding}), "
            f"peak {plan.v_peak * 60:.3f} m/min, {plan.duration:.4f} s"
        )
    click.echo(f"total time: {result.total_time:.4f} s")
