import logging
import time

import click

from app.commands import CliContext, pass_cli
from app.services.search_211 import search_211

logger = logging.getLogger(__name__)


@click.command("search211")
@click.option("--max-n", type=click.IntRange(min=1), required=True)
@click.option("--min-n", type=click.IntRange(min=1), default=1, show_default=True)
@click.option(
    "--budget",
    type=click.FloatRange(min=0, min_open=True),
    default=None,
    help="Seconds for the whole run; exit 3 when exceeded",
)
@pass_cli
def search211(obj: CliContext, max_n: int, min_n: int, budget: float | None) -> None:
    """Exhaustive search for (2,1,1)-triples, one record per length."""
    if min_n > max_n:
        raise click.BadParameter(f"--min-n {min_n} exceeds --max-n {max_n}", param_hint="--min-n")
    deadline = time.monotonic() + budget if budget is not None else None
    records = []
    for n in range(min_n, max_n + 1):
        remaining = deadline - time.monotonic() if deadline is not None else None
        records.append(search_211(n, remaining).to_record())
    obj.emit("search211", records)
