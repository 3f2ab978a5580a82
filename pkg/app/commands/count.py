import logging

import click

from app.commands import CliContext, family_option, pass_cli
from app.services.enumeration import Family, FamilyStats, count_profile, count_records, family_profile

logger = logging.getLogger(__name__)


@click.command("count")
@click.option("--max-n", type=click.IntRange(min=0), required=True, help="Largest word length")
@click.option("--from-n", type=click.IntRange(min=0), default=0, show_default=True, help="Smallest length to emit")
@pass_cli
def count(obj: CliContext, max_n: int, from_n: int) -> None:
    """Number a(n) of ternary square-free words of each length."""
    if from_n > max_n:
        raise click.BadParameter(f"--from-n {from_n} exceeds --max-n {max_n}", param_hint="--from-n")
    profile = count_profile(max_n, workers=obj.workers, cache=obj.cache)
    obj.emit("count", count_records(profile, from_n))


@click.command("family-stats")
@family_option()
@click.option("--min-n", type=click.IntRange(min=0), required=True)
@click.option("--max-n", type=click.IntRange(min=0), default=None, help="Defaults to --min-n")
@pass_cli
def family_stats(obj: CliContext, family: Family, min_n: int, max_n: int | None) -> None:
    """Size, palindromes and reversal pairs of a word family per length."""
    max_n = min_n if max_n is None else max_n
    if min_n > max_n:
        raise click.BadParameter(f"--min-n {min_n} exceeds --max-n {max_n}", param_hint="--min-n")
    words_by_n = family_profile(min_n, max_n, family)
    obj.emit(
        "family-stats",
        [FamilyStats.from_words(n, family, words_by_n[n]).to_record() for n in range(min_n, max_n + 1)],
    )
