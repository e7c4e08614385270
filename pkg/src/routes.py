import click

from commands.generate_command import generate_command
from commands.limits_command import limits_command
from commands.metrics_command import metrics_command
from commands.simulate_command import simulate_command


def register_commands(cli: click.Group) -> None:
    cli.add_command(simulate_command)
    cli.add_command(limits_command)
    cli.add_command(metrics_command)
    cli.add_command(generate_command)
