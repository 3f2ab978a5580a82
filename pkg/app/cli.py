"""
Command-line entry point.

Every command writes one record to stdout (JSON, CSV or an aligned table);
logs go to stderr. Exit codes: 0 success, 1 negative verification, 2 usage or
input error, 3 resource limit.
"""

import logging
from pathlib import Path

import click

from app.commands import EXIT_RESOURCE, EXIT_USAGE, CliContext
from app.commands.bounds import bounds
from app.commands.count import count, family_stats
from app.commands.reference import reference
from app.commands.search import admissible, optimal, tables, triples
from app.commands.search_211 import search211
from app.commands.verify import substitute, verify
from app.core.exceptions import DataException, ParseException, ResourceLimitException
from app.core.logging_config import setup_logging
from app.core.output import FORMATS
from app.core.service_container import use_cache_dir

logger = logging.getLogger(__name__)


class CommandGroup(click.Group):
    """Group that turns domain exceptions into one stderr line and an exit code."""

    def invoke(self, ctx: click.Context):
        try:
            return super().invoke(ctx)
        except (ParseException, DataException) as e:
            logger.debug("Command failed on its input", exc_info=True)
            click.echo(f"Error: {e}", err=True)
            ctx.exit(EXIT_USAGE)
        except ResourceLimitException as e:
            logger.debug("Command hit a resource limit", exc_info=True)
            click.echo(f"Error: {e}", err=True)
            ctx.exit(EXIT_RESOURCE)


@click.group(cls=CommandGroup)
@click.option(
    "--format",
    "fmt",
    type=click.Choice(FORMATS),
    default="table",
    show_default=True,
    help="Output format of the command record",
)
@click.option(
    "--threads",
    type=click.IntRange(min=1),
    default=None,
    help="Worker processes for sharded enumeration (default: all cores)",
)
@click.option(
    "--cache-dir",
    type=click.Path(file_okay=False, path_type=Path),
    default=None,
    help="Directory for cached word lists, catalogs and edge lists",
)
@click.option(
    "--log-level",
    type=click.Choice(["DEBUG", "INFO", "WARNING", "ERROR"], case_sensitive=False),
    default=None,
)
@click.pass_context
def cli(ctx: click.Context, fmt: str, threads: int | None, cache_dir: Path | None, log_level: str | None) -> None:
    """Ternary square-free words, Brinkhuis triples and growth-rate bounds."""
    # level and command change per invocation
    setup_logging(log_level, command=ctx.invoked_subcommand, force=True)
    if cache_dir is not None:
        use_cache_dir(cache_dir)
    ctx.obj = CliContext(fmt=fmt, workers=threads)


for command in (
    count,
    family_stats,
    admissible,
    triples,
    optimal,
    tables,
    verify,
    substitute,
    bounds,
    search211,
    reference,
):
    cli.add_command(command)


def main() -> None:
    cli(prog_name="brinkhuis")
