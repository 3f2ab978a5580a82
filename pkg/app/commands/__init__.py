"""
Click commands, one module per concern; app.cli registers them on the group.
"""

from dataclasses import dataclass
from pathlib import Path

import click

from app.config.reference import ReferenceData
from app.core.cache import DiskCache
from app.core.exceptions import ParseException
from app.core.output import OutputFormat, render
from app.core.service_container import container
from app.services.enumeration import Family

EXIT_NEGATIVE = 1
EXIT_USAGE = 2
EXIT_RESOURCE = 3


@dataclass
class CliContext:
    fmt: OutputFormat = "table"
    workers: int | None = None

    @property
    def cache(self) -> DiskCache:
        return container.get("disk_cache")

    @property
    def reference(self) -> ReferenceData:
        return container.get("reference_data")

    def emit(self, command: str, payload) -> None:
        click.echo(render(command, payload, self.fmt))


pass_cli = click.make_pass_decorator(CliContext, ensure=True)


def family_callback(ctx: click.Context, param: click.Parameter, value: str | None) -> Family | None:
    if value is None:
        return None
    try:
        return Family.parse(value)
    except ParseException as e:
        raise click.BadParameter(str(e)) from None


def family_option(default: str | None = None):
    return click.option(
        "--family",
        default=default,
        required=default is None,
        callback=family_callback,
        help="Word family: A1 (trip1), A2 (trip2) or ALL",
    )


def read_text(path: Path) -> str:
    try:
        return path.read_text()
    except UnicodeDecodeError as e:
        raise ParseException(f"{path} is not a text file: {e}") from None


def negative_exit() -> None:
    click.get_current_context().exit(EXIT_NEGATIVE)
