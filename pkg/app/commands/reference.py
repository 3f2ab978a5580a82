import logging
from pathlib import Path

import click

from app.commands import CliContext, pass_cli
from app.core.datatypes import GeneratorSetSummary
from app.core.exceptions import DataException
from app.services.triples import (
    dump_triple_document,
    generator_set_from_reference,
    triple_from_reference,
)

logger = logging.getLogger(__name__)

# name of the published 18-letter (2,2,2)-triple in `reference export`
EZ_NAME = "EZ"


@click.group("reference")
def reference() -> None:
    """Published generator sets and the 18-letter triple pair."""


@reference.command("list")
@pass_cli
def list_sets(obj: CliContext) -> None:
    """Published generator sets with their signatures."""
    summaries: list[GeneratorSetSummary] = []
    for name, entry in obj.reference.generator_sets.items():
        g = generator_set_from_reference(entry)
        summaries.append(
            {"name": name, "n": g.n, "family": g.family.value, "signature": list(g.signature), "k": g.k}
        )
    obj.emit("reference", summaries)


@reference.command("export")
@click.argument("name")
@click.argument("output", type=click.Path(dir_okay=False, writable=True, path_type=Path))
@pass_cli
def export(obj: CliContext, name: str, output: Path) -> None:
    """Write generator set NAME (G13 ... G41, or EZ) as a triple file."""
    ref = obj.reference
    if name.upper() == EZ_NAME:
        triple = triple_from_reference(ref.ez_triple)
    elif name in ref.generator_sets:
        triple = generator_set_from_reference(ref.generator_sets[name])
    else:
        known = ", ".join([*ref.generator_sets, EZ_NAME])
        raise DataException(f"unknown reference triple {name!r}; known: {known}")
    output.write_text(dump_triple_document(triple))
    logger.info(f"Wrote {name} to {output}", extra={"n": triple.n})
    obj.emit("reference", {"name": name, "path": str(output), "n": triple.n})
