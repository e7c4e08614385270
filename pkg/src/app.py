import os
import sys

import click

sys.path.append(os.path.dirname(os.path.abspath(__file__)))

from commands.shared import echo_error  # noqa: E402
from config import create_config  # noqa: E402
from routes import register_commands  # noqa: E402


def create_cli() -> click.Group:
    @click.group()
    @click.pass_context
    def cli(ctx: click.Context) -> None:
        """Circular-interpolation feed-rate simulator and circularity analyzer."""
        try:
            ctx.obj = create_config()
        except ValueError as err:
            echo_error(str(err))
            ctx.exit(1)

    register_commands(cli)
    return cli


cli = create_cli()


def main() -> None:
    cli()


if __name__ == "__main__":
    main()
