"""
Brinkhuis triples: construction, exact verification and substitution.

A (k0, k1, k2)-triple is valid when every composed word ABC, with the blocks
A, B, C drawn from B^(i), B^(j), B^(l) for a square-free pattern ijl of length
three, is square-free. The full check covers all twelve patterns and tests the
composed words in lexicographic order, so the reported witness is the
lexicographically first failing one.

A special triple is generated by B0 alone (B1 = tau(B0), B2 = tau^2(B0), B0
closed under reversal). Every composed word with a pattern starting in 1 or 2
is the tau-image of one starting in 0, and reversal maps pattern 021 onto 120,
the tau-image of 012, while it maps 010 and 020 onto themselves. The reduced
check therefore covers:

  * every composition with pattern 012 (k^3 words), and
  * the compositions with patterns 010 and 020 whose word is not larger than
    its reversal (one per reversal orbit, (k^3 + k*k_p)/2 words each),

k(2k^2 + k_p) words in total.
"""

import itertools
import json
import logging
import time
from dataclasses import dataclass
from typing import Any, Iterable, Iterator, NamedTuple, Sequence

import numpy as np

import app.config.common as config
from app.core.datatypes import SquareRecord, TripleDocument, VerdictRecord, WitnessRecord
from app.core.exceptions import (
    FamilyLengthException,
    MalformedTripleException,
    ParseException,
    SelectorOutOfRangeException,
)
from app.core.square_scan import first_square_index
from app.core.words import (
    TAU,
    TAU2,
    LetterPermutation,
    Square,
    Word,
    canonical,
    find_square,
    is_palindrome,
    is_square_free,
    normalizing_permutation,
    parse_word,
    permute,
    reverse,
)
from app.services.enumeration import SMALL_WORDS, Family

logger = logging.getLogger(__name__)

Condition = tuple[Word, Word, Word]

PATTERNS: tuple[tuple[int, int, int], ...] = tuple(
    (int(w[0]), int(w[1]), int(w[2])) for w in SMALL_WORDS[3]
)
REDUCED_PATTERNS: tuple[tuple[int, int, int], ...] = ((0, 1, 0), (0, 1, 2), (0, 2, 0))
_ROTATIONS = (None, TAU, TAU2)


class Signature(NamedTuple):
    k_p: int
    k_n: int

    @property
    def k(self) -> int:
        return self.k_p + 2 * self.k_n


def _rotate(w: Word, power: int) -> Word:
    return w if power % 3 == 0 else permute(w, _ROTATIONS[power % 3])


@dataclass(frozen=True)
class BrinkhuisTriple:
    """Three sets of pairwise different square-free words of one length."""

    n: int
    b0: tuple[Word, ...]
    b1: tuple[Word, ...]
    b2: tuple[Word, ...]

    def __post_init__(self) -> None:
        for name in ("b0", "b1", "b2"):
            object.__setattr__(self, name, tuple(getattr(self, name)))
        seen: set[Word] = set()
        for i, block in enumerate(self.blocks):
            if not block:
                raise MalformedTripleException(f"block B{i} is empty")
            for w in block:
                if len(w) != self.n:
                    raise MalformedTripleException(
                        f"word {w!r} in B{i} has length {len(w)}, expected {self.n}"
                    )
                if not is_square_free(w):
                    raise MalformedTripleException(f"word {w!r} in B{i} is not square-free")
                if w in seen:
                    raise MalformedTripleException(f"word {w!r} occurs more than once")
                seen.add(w)

    @classmethod
    def of(cls, b0: Iterable[Word], b1: Iterable[Word], b2: Iterable[Word]) -> "BrinkhuisTriple":
        b0, b1, b2 = tuple(b0), tuple(b1), tuple(b2)
        if not b0:
            raise MalformedTripleException("block B0 is empty")
        return cls(len(b0[0]), b0, b1, b2)

    @property
    def blocks(self) -> tuple[tuple[Word, ...], tuple[Word, ...], tuple[Word, ...]]:
        return (self.b0, self.b1, self.b2)

    def block(self, letter: int) -> tuple[Word, ...]:
        return self.blocks[letter]

    @property
    def sizes(self) -> tuple[int, int, int]:
        return (len(self.b0), len(self.b1), len(self.b2))

    def permuted(self, p: LetterPermutation) -> "BrinkhuisTriple":
        """Relabel letters by p; B^(i) becomes the block of letter p(i)."""
        blocks: list[tuple[Word, ...]] = [(), (), ()]
        for i, block in enumerate(self.blocks):
            blocks[p(i)] = tuple(permute(w, p) for w in block)
        return BrinkhuisTriple(self.n, *blocks)

    def reversed(self) -> "BrinkhuisTriple":
        return BrinkhuisTriple(self.n, *(tuple(reverse(w) for w in b) for b in self.blocks))

    def to_document(self) -> TripleDocument:
        return {
            "n": self.n,
            "kind": "general",
            "b0": list(self.b0),
            "b1": list(self.b1),
            "b2": list(self.b2),
        }


def _classify_all(words: Sequence[Word]) -> Family:
    for family in (Family.A1, Family.A2):
        if words and all(family.contains(w) for w in words):
            return family
    return Family.ALL


@dataclass(frozen=True)
class GeneratorSet:
    """Palindromes plus one representative per reversal pair; B0 is their reversal closure."""

    n: int
    family: Family
    palindromes: tuple[Word, ...]
    pair_reps: tuple[Word, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "palindromes", tuple(sorted(self.palindromes)))
        object.__setattr__(self, "pair_reps", tuple(sorted(self.pair_reps)))
        for w in self.palindromes + self.pair_reps:
            if len(w) != self.n:
                raise MalformedTripleException(
                    f"generator {w!r} has length {len(w)}, expected {self.n}"
                )
            if not is_square_free(w):
                raise MalformedTripleException(f"generator {w!r} is not square-free")
            if self.family is not Family.ALL and not self.family.contains(w):
                raise MalformedTripleException(
                    f"generator {w!r} is not of the form {self.family.head}...{self.family.tail}"
                )
        for w in self.palindromes:
            if not is_palindrome(w):
                raise MalformedTripleException(f"{w!r} is listed as a palindrome but is not one")
        for w in self.pair_reps:
            if not w < reverse(w):
                raise MalformedTripleException(
                    f"pair representative {w!r} must be smaller than its reversal"
                )
        generators = self.palindromes + self.pair_reps
        if len(set(generators)) != len(generators):
            raise MalformedTripleException("generator words must be distinct")

    @classmethod
    def from_words(cls, n: int, family: Family, words: Iterable[Word]) -> "GeneratorSet":
        """Generator set of the reversal closure of ``words`` (either orientation of a pair may be given)."""
        words = set(words)
        palindromes = sorted(w for w in words if is_palindrome(w))
        pair_reps = sorted({canonical(w) for w in words if not is_palindrome(w)})
        return cls(n, family, tuple(palindromes), tuple(pair_reps))

    @property
    def k_p(self) -> int:
        return len(self.palindromes)

    @property
    def k_n(self) -> int:
        return len(self.pair_reps)

    @property
    def k(self) -> int:
        return self.k_p + 2 * self.k_n

    @property
    def signature(self) -> Signature:
        return Signature(self.k_p, self.k_n)

    @property
    def generators(self) -> tuple[Word, ...]:
        return tuple(sorted(self.palindromes + self.pair_reps))

    @property
    def words(self) -> tuple[Word, ...]:
        """B0, sorted."""
        return tuple(sorted(self.palindromes + self.pair_reps + tuple(reverse(w) for w in self.pair_reps)))

    def permuted(self, p: LetterPermutation) -> "GeneratorSet":
        """Generator set of the special triple relabelled by p."""
        shift = p.inverse()(0)
        q = p.compose(TAU.power(shift))
        images = [permute(w, q) for w in self.words]
        return GeneratorSet.from_words(self.n, _classify_all(images), images)

    def reversed(self) -> "GeneratorSet":
        # B0 is closed under reversal, so this is the same set
        images = [reverse(w) for w in self.words]
        return GeneratorSet.from_words(self.n, _classify_all(images), images)

    def normalized(self) -> "GeneratorSet":
        """Equivalent generator set whose smallest word is rotated and relabelled to start with 01."""
        if not self.words:
            return self
        first = self.words[0]
        shift = -int(first[0]) % 3
        rotated = [_rotate(w, shift) for w in self.words]
        if self.n >= 2:
            p = normalizing_permutation(_rotate(first, shift))
            rotated = [permute(w, p) for w in rotated]
        return GeneratorSet.from_words(self.n, _classify_all(rotated), rotated)

    def to_document(self) -> TripleDocument:
        return {
            "n": self.n,
            "kind": "special",
            "family": self.family.value,
            "palindromes": list(self.palindromes),
            "pair_reps": list(self.pair_reps),
        }


@dataclass(frozen=True)
class Witness:
    """A failing composed word (or a failing block word) and its first square."""

    blocks: tuple[Word, ...]
    square: Square | None

    @property
    def word(self) -> Word:
        return "".join(self.blocks)

    def to_record(self) -> WitnessRecord:
        square: SquareRecord | None = (
            {"start": self.square.start, "half": self.square.half} if self.square else None
        )
        return {"word": self.word, "blocks": list(self.blocks), "square": square}


@dataclass(frozen=True)
class Verdict:
    n: int
    valid: bool
    checked: int
    mode: str = "full"
    witness: Witness | None = None

    def to_record(self) -> VerdictRecord:
        record: VerdictRecord = {
            "n": self.n,
            "valid": self.valid,
            "checked": self.checked,
            "mode": self.mode,
        }
        if self.witness is not None:
            record["witness"] = self.witness.to_record()
        return record


def build_special_triple(g: GeneratorSet) -> BrinkhuisTriple:
    if g.k == 0:
        raise MalformedTripleException("a special triple needs at least one generator")
    b0 = g.words
    return BrinkhuisTriple(g.n, b0, tuple(_rotate(w, 1) for w in b0), tuple(_rotate(w, 2) for w in b0))


def condition_count(k0: int, k1: int, k2: int) -> int:
    return (
        6 * k0 * k1 * k2
        + k0 * k0 * (k1 + k2)
        + k1 * k1 * (k0 + k2)
        + k2 * k2 * (k0 + k1)
    )


def reduced_condition_count(g: GeneratorSet) -> int:
    return g.k * (2 * g.k * g.k + g.k_p)


def composed_word_conditions(t: BrinkhuisTriple) -> list[Condition]:
    """All block triples over the twelve patterns, pattern by pattern."""
    return [
        (a, b, c)
        for i, j, l in PATTERNS
        for a, b, c in itertools.product(t.block(i), t.block(j), t.block(l))
    ]


def _ordered_conditions(t: BrinkhuisTriple) -> Iterator[Condition]:
    # blocks share one length, so (a, b, c) order is the order of the composed words
    tagged = sorted((w, i) for i, block in enumerate(t.blocks) for w in block)
    for a, i in tagged:
        for b, j in tagged:
            if j == i:
                continue
            for c, l in tagged:
                if l != j:
                    yield (a, b, c)


def special_conditions(g: GeneratorSet) -> Iterator[Condition]:
    """The reduced condition set of the special triple, in lexicographic order."""
    b0 = g.words
    zeros = [(w, 0) for w in b0]
    middles = sorted([(_rotate(w, 1), 1) for w in b0] + [(_rotate(w, 2), 2) for w in b0])
    lasts = {1: sorted(zeros + [(_rotate(w, 2), 2) for w in b0]), 2: zeros}
    for a in b0:
        for b, j in middles:
            for c, l in lasts[j]:
                if l == 0:
                    composed = a + b + c
                    if composed > composed[::-1]:
                        continue
                yield (a, b, c)


def mixed_conditions(orbits: Sequence[Sequence[Word]]) -> Iterator[Condition]:
    """
    Reduced conditions of the special triple generated by the union of the
    orbits that take at least one block from every orbit.

    With one orbit this is the whole reduced set of that generator; with two or
    three it is what a pair or triple of generators adds on top of its subsets.
    """
    rotated = [[tuple(_rotate(w, power) for w in orbit) for power in range(3)] for orbit in orbits]
    r = len(orbits)
    for ta, tb, tc in itertools.product(range(r), repeat=3):
        if len({ta, tb, tc}) != r:
            continue
        for _, pb, pc in REDUCED_PATTERNS:
            for a in rotated[ta][0]:
                for b in rotated[tb][pb]:
                    for c in rotated[tc][pc]:
                        if pc == 0:
                            composed = a + b + c
                            if composed > composed[::-1]:
                                continue
                        yield (a, b, c)


def first_failure(conditions: Iterable[Condition]) -> tuple[int, Witness | None]:
    """
    Scan conditions in order, batch by batch.

    Returns the number of conditions tested up to and including the first
    failing one (all of them when none fails) and the failing witness.
    """
    checked = 0
    for batch in itertools.batched(conditions, config.scan_batch):
        words = ["".join(c) for c in batch]
        idx = first_square_index(words)
        if idx is not None:
            return checked + idx + 1, Witness(tuple(batch[idx]), find_square(words[idx]))
        checked += len(batch)
    return checked, None


def verify_triple(t: BrinkhuisTriple) -> Verdict:
    start = time.time()
    checked, witness = first_failure(_ordered_conditions(t))
    logger.debug(
        f"Full verification of a {t.sizes} triple: {'valid' if witness is None else 'invalid'}",
        extra={"n": t.n, "checked": checked, "duration_ms": round((time.time() - start) * 1000)},
    )
    return Verdict(t.n, witness is None, checked, "full", witness)


def verify_special_triple(g: GeneratorSet) -> Verdict:
    if g.k == 0:
        raise MalformedTripleException("a special triple needs at least one generator")
    start = time.time()
    checked, witness = first_failure(special_conditions(g))
    logger.debug(
        f"Reduced verification of signature {tuple(g.signature)}: {'valid' if witness is None else 'invalid'}",
        extra={"n": g.n, "checked": checked, "duration_ms": round((time.time() - start) * 1000)},
    )
    return Verdict(g.n, witness is None, checked, "reduced", witness)


def apply_substitution(t: BrinkhuisTriple, w: Word, choices: Sequence[int] | None = None) -> Word:
    """Replace letter i at position m of w by ``t.block(i)[choices[m]]``."""
    if choices is None:
        choices = [0] * len(w)
    if len(choices) != len(w):
        raise SelectorOutOfRangeException(
            f"selector has {len(choices)} entries for a word of length {len(w)}"
        )
    parts = []
    for pos, (ch, idx) in enumerate(zip(w, choices)):
        block = t.block(int(ch))
        if not 0 <= idx < len(block):
            raise SelectorOutOfRangeException(
                f"position {pos}: index {idx} outside B{ch} of size {len(block)}"
            )
        parts.append(block[idx])
    return "".join(parts)


def random_selector(t: BrinkhuisTriple, w: Word, seed: int | None = None) -> list[int]:
    rng = np.random.default_rng(seed)
    return [int(rng.integers(len(t.block(int(ch))))) for ch in w]


def heads_tails_filter(w: Word) -> Family | None:
    """A1 or A2 by head and tail; None for words of neither form."""
    if len(w) < config.family_min_length:
        raise FamilyLengthException(
            f"head/tail classification needs length >= {config.family_min_length}, got {len(w)}"
        )
    for family in (Family.A1, Family.A2):
        if family.contains(w):
            return family
    return None


def spanning_square(left: Word, middle: Word, right: Word) -> Square | None:
    """
    First square of left+middle+right that starts in ``left`` and ends in ``right``.

    When left+middle and middle+right are square-free these are the only
    squares the concatenation can contain.
    """
    w = left + middle + right
    lo, hi = len(left), len(left) + len(middle)
    for end in range(hi + 1, len(w) + 1):
        last = end - 1
        for half in range((end - lo + 2) // 2, end // 2 + 1):
            if w[last] == w[last - half] and w[end - half : end] == w[end - 2 * half : end - half]:
                return Square(end - 2 * half, half)
    return None


def generator_set_from_reference(entry: dict[str, Any]) -> GeneratorSet:
    return GeneratorSet.from_words(int(entry["n"]), Family.parse(entry["family"]), entry["words"])


def triple_from_reference(entry: dict[str, Any]) -> BrinkhuisTriple:
    return BrinkhuisTriple(int(entry["n"]), entry["b0"], entry["b1"], entry["b2"])


def dump_triple_document(obj: BrinkhuisTriple | GeneratorSet) -> str:
    return json.dumps(obj.to_document(), indent=2) + "\n"


def _word_list(doc: dict[str, Any], key: str) -> list[Word]:
    value = doc.get(key)
    if not isinstance(value, list) or not all(isinstance(w, str) for w in value):
        raise ParseException(f"triple file field {key!r} must be a list of word strings")
    return [parse_word(w) for w in value]


def read_triple_document(text: str) -> TripleDocument:
    """Parse and shape-check a triple file; words are checked for alphabet only."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseException(f"triple file is not valid JSON: {e}") from None
    if not isinstance(doc, dict):
        raise ParseException("triple file must hold a JSON object")
    if not isinstance(doc.get("n"), int) or doc["n"] < 1:
        raise ParseException("triple file field 'n' must be a positive integer")
    kind = doc.get("kind")
    if kind == "general":
        return {
            "n": doc["n"],
            "kind": "general",
            **{key: _word_list(doc, key) for key in ("b0", "b1", "b2")},
        }
    if kind == "special":
        family = Family.parse(str(doc.get("family", "ALL")))
        return {
            "n": doc["n"],
            "kind": "special",
            "family": family.value,
            "palindromes": _word_list(doc, "palindromes"),
            "pair_reps": _word_list(doc, "pair_reps"),
        }
    raise ParseException(f"triple file field 'kind' must be 'general' or 'special', got {kind!r}")


def document_words(doc: TripleDocument) -> list[Word]:
    if doc["kind"] == "general":
        return doc["b0"] + doc["b1"] + doc["b2"]
    return doc["palindromes"] + doc["pair_reps"]


def build_from_document(doc: TripleDocument) -> BrinkhuisTriple | GeneratorSet:
    if doc["kind"] == "general":
        return BrinkhuisTriple(doc["n"], doc["b0"], doc["b1"], doc["b2"])
    pair_reps = [canonical(w) for w in doc["pair_reps"]]
    return GeneratorSet(doc["n"], Family(doc["family"]), tuple(doc["palindromes"]), tuple(pair_reps))


def load_triple_document(text: str) -> BrinkhuisTriple | GeneratorSet:
    return build_from_document(read_triple_document(text))


def verify_document(text: str, mode: str = "full") -> Verdict:
    """
    Verify a triple file.

    A block word that is itself not square-free is a negative verdict with that
    word as witness; every other malformation raises.
    """
    doc = read_triple_document(text)
    if mode == "reduced" and doc["kind"] != "special":
        raise ParseException("reduced verification needs a special triple file")
    for w in document_words(doc):
        square = find_square(w)
        if square is not None:
            return Verdict(doc["n"], False, 0, mode, Witness((w,), square))
    obj = build_from_document(doc)
    if isinstance(obj, GeneratorSet):
        if mode == "reduced":
            return verify_special_triple(obj)
        return verify_triple(build_special_triple(obj))
    return verify_triple(obj)
