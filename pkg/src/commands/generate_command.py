from pathlib import Path
from typing import Any

import click

from commands.shared import exit_on_error, generator_options, generator_params, pop_generator_options
from services.toolpath_generator import generate_test_path
from services.toolpath_store import save_toolpath


@click.command('generate')
@generator_options
@click.option('--out', 'out_file', type=click.Path(path_type=Path), required=True, help="Toolpath JSON output.")
@exit_on_error
def generate_command(**options: Any) -> None:
    """Write a generated test path as toolpath JSON."""
    params = generator_params(pop_generator_options(options))
    if params is None:
        raise ValueError("--generate is required")
    toolpath = generate_test_path(params)
    save_toolpath(toolpath, options['out_file'])
    click.echo(f"{len(toolpath)} block(s) written to {options['out_file']}")
