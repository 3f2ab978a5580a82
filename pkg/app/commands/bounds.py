import logging

import click

from app.commands import CliContext, pass_cli
from app.services.bounds import best_bounds, general_lower_bound, lower_bound, upper_bound
from app.services.enumeration import count_profile

logger = logging.getLogger(__name__)


@click.group("bounds")
def bounds() -> None:
    """Lower and upper bounds on the growth rate of ternary square-free words."""


@bounds.command("lower")
@click.option("--n", "n", type=int, required=True, help="Block word length")
@click.option("--k", "k", type=int, required=True, help="Words per block of a special triple")
@pass_cli
def lower(obj: CliContext, n: int, k: int) -> None:
    """k^(1/(n-1)) from a special n-triple with k words per block."""
    obj.emit("bounds", lower_bound(n, k).to_record())


@bounds.command("lower-general")
@click.option("--n", "n", type=int, required=True)
@click.option("--k0", type=int, required=True)
@click.option("--k1", type=int, required=True)
@click.option("--k2", type=int, required=True)
@pass_cli
def lower_general(obj: CliContext, n: int, k0: int, k1: int, k2: int) -> None:
    """Lower bound from a general (k0, k1, k2)-triple."""
    obj.emit("bounds", general_lower_bound(n, k0, k1, k2).to_record())


@bounds.command("upper")
@click.option("--n", "n", type=int, required=True)
@click.option("--a", "a_n", type=int, required=True, help="a(n), the number of square-free words of length n")
@pass_cli
def upper(obj: CliContext, n: int, a_n: int) -> None:
    """(a(n)/6)^(1/(n-2))."""
    obj.emit("bounds", upper_bound(n, a_n).to_record())


@bounds.command("best")
@click.option(
    "--counts-to",
    type=click.IntRange(min=3),
    default=None,
    help="Count a(n) up to this length instead of using the published counts",
)
@pass_cli
def best(obj: CliContext, counts_to: int | None) -> None:
    """Best lower bound over the published optimal triples and best upper bound over the counts."""
    ref = obj.reference
    rows = [(entry["n"], entry["k"]) for entry in ref.lower_bounds]
    rows += [(row["n"], row["k_opt"]) for family_rows in ref.tables.values() for row in family_rows]
    if counts_to is None:
        counts = ref.all_counts()
    else:
        counts = dict(enumerate(count_profile(counts_to, workers=obj.workers, cache=obj.cache)))
    low, high = best_bounds(rows, counts)
    obj.emit("bounds", [low.to_record(), high.to_record()])
