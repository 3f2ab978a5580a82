import logging
from pathlib import Path

import click

from app.commands import CliContext, negative_exit, pass_cli, read_text
from app.core.datatypes import SubstitutionRecord
from app.core.exceptions import DataException
from app.core.words import find_square, is_square_free, parse_word
from app.services.triples import (
    GeneratorSet,
    apply_substitution,
    build_special_triple,
    load_triple_document,
    random_selector,
    verify_document,
)

logger = logging.getLogger(__name__)

triple_file = click.argument(
    "triple_file", type=click.Path(exists=True, dir_okay=False, path_type=Path)
)


@click.command("verify")
@triple_file
@click.option(
    "--mode",
    type=click.Choice(["full", "reduced"]),
    default="full",
    show_default=True,
    help="reduced checks one composition per symmetry orbit of a special triple",
)
@pass_cli
def verify(obj: CliContext, triple_file: Path, mode: str) -> None:
    """Check every composed word of a triple file; exit 1 with a witness if one has a square."""
    verdict = verify_document(read_text(triple_file), mode)
    obj.emit("verify", verdict.to_record())
    if not verdict.valid:
        logger.warning(f"{triple_file} is not a Brinkhuis triple", extra={"n": verdict.n, "checked": verdict.checked})
        negative_exit()


@click.command("substitute")
@triple_file
@click.argument("word")
@click.option("--seed", type=int, default=None, help="Seed for the per-position block choice")
@pass_cli
def substitute(obj: CliContext, triple_file: Path, word: str, seed: int | None) -> None:
    """Image of a square-free WORD, each letter replaced by a word from its block."""
    w = parse_word(word)
    if not is_square_free(w):
        raise DataException(f"input word {w!r} is not square-free")
    triple = load_triple_document(read_text(triple_file))
    if isinstance(triple, GeneratorSet):
        triple = build_special_triple(triple)
    choices = random_selector(triple, w, seed)
    image = apply_substitution(triple, w, choices)
    square = find_square(image)
    if square is not None:
        logger.warning(
            f"Image of {w!r} under {triple_file} has a square of half-length {square.half} at {square.start}"
        )
        negative_exit()
    record: SubstitutionRecord = {
        "word": w,
        "image": image,
        "choices": choices,
        "length": len(image),
        "square_free": True,
    }
    obj.emit("substitute", record)
