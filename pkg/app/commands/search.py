import logging
from pathlib import Path

import click

from app.commands import CliContext, family_option, pass_cli
from app.core.exceptions import DataException
from app.services.enumeration import Family
from app.services.search import (
    build_catalog,
    build_hypergraph,
    compare_row,
    format_edge_list,
    optimal_triple,
    short_admissible_words,
    table_rows,
)
from app.services.triples import dump_triple_document

logger = logging.getLogger(__name__)

length_option = click.option("--n", "n", type=click.IntRange(min=1), required=True, help="Word length")


@click.command("admissible")
@family_option(default="A1")
@length_option
@click.option(
    "--short",
    is_flag=True,
    help="List words of any family starting 01 that generate a special triple alone",
)
@pass_cli
def admissible(obj: CliContext, family: Family, n: int, short: bool) -> None:
    """Step 1: admissible generators of a head/tail family."""
    if short:
        obj.emit("admissible", {"n": n, "words": short_admissible_words(n)})
        return
    obj.emit("admissible", build_catalog(n, family, cache=obj.cache).to_record())


@click.command("triples")
@family_option()
@length_option
@click.option(
    "--edges",
    type=click.Path(dir_okay=False, writable=True, path_type=Path),
    default=None,
    help="Also write the edge list to this file",
)
@pass_cli
def triples(obj: CliContext, family: Family, n: int, edges: Path | None) -> None:
    """Step 2: feasible pairs and triples of admissible generators."""
    catalog = build_catalog(n, family, cache=obj.cache)
    h = build_hypergraph(catalog, cache=obj.cache)
    if edges is not None:
        edges.write_text(format_edge_list(h))
        logger.info(f"Wrote edge list to {edges}", extra={"family": family.value, "n": n})
    obj.emit("triples", h.to_record())


@click.command("optimal")
@family_option()
@length_option
@click.option(
    "--save",
    type=click.Path(dir_okay=False, writable=True, path_type=Path),
    default=None,
    help="Write the first optimal generator set as a triple file",
)
@pass_cli
def optimal(obj: CliContext, family: Family, n: int, save: Path | None) -> None:
    """Step 3: optimal special triples, one per optimal signature."""
    catalog = build_catalog(n, family, cache=obj.cache)
    result = optimal_triple(catalog, build_hypergraph(catalog, cache=obj.cache))
    if save is not None:
        if result.k_opt == 0:
            raise DataException(f"no special triple exists in {family.value} at n={n}")
        save.write_text(dump_triple_document(result.optima[0][1]))
    obj.emit("optimal", result.to_records())


@click.command("tables")
@click.argument("which", metavar="FAMILY")
@click.option("--min-n", type=click.IntRange(min=1), required=True)
@click.option("--max-n", type=click.IntRange(min=1), default=None, help="Defaults to --min-n")
@click.option(
    "--steps",
    type=click.Choice(["12", "123"]),
    default="123",
    show_default=True,
    help="12 stops after the hypergraph; k_opt and the signature are then null",
)
@click.option("--compare", is_flag=True, help="Flag cells that deviate from the published table")
@pass_cli
def tables(
    obj: CliContext, which: str, min_n: int, max_n: int | None, steps: str, compare: bool
) -> None:
    """Reproduce the search tables for FAMILY (A1/trip1 or A2/trip2)."""
    family = Family.parse(which)
    max_n = min_n if max_n is None else max_n
    if min_n > max_n:
        raise click.BadParameter(f"--min-n {min_n} exceeds --max-n {max_n}", param_hint="--min-n")
    records = []
    for row in table_rows(min_n, max_n, family, steps, cache=obj.cache, workers=obj.workers):
        record = row.to_record()
        if compare:
            published = obj.reference.table_row(family.value, row.n)
            record["mismatches"] = compare_row(row, published) if published else None
        records.append(record)
    obj.emit("tables", records)
