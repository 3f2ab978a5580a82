"""
Ternary word algebra.

A word is a plain ``str`` over the digits "0", "1", "2" (the empty string is the
empty word). Letters are the integers 0, 1, 2; since the digit characters sort
in the same order as the integers, string comparison is the lexicographic order
on letter sequences.
"""

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, NamedTuple

from app.config.common import ALPHABET
from app.core.exceptions import DataException, ParseException

Word = str
Letter = int


class Square(NamedTuple):
    """A factor ``yy`` of a word: ``y`` starts at ``start`` and has length ``half``."""

    start: int
    half: int

    def factor(self, w: Word) -> Word:
        return w[self.start : self.start + 2 * self.half]


def parse_word(text: str) -> Word:
    text = text.strip()
    bad = set(text) - set(ALPHABET)
    if bad:
        raise ParseException(
            f"words use the letters 0, 1, 2 only; found {''.join(sorted(bad))!r}"
        )
    return text


def letter_char(c: Letter | str) -> str:
    ch = str(c)
    if len(ch) != 1 or ch not in ALPHABET:
        raise ParseException(f"not a letter of the ternary alphabet: {c!r}")
    return ch


def letters(w: Word) -> tuple[Letter, ...]:
    return tuple(int(ch) for ch in w)


def from_letters(seq: Iterable[Letter]) -> Word:
    return "".join(letter_char(c) for c in seq)


def square_half_ending_at(w: Word, end: int) -> int:
    """Half-length of the shortest square ending at ``end``, or 0 if there is none."""
    last = end - 1
    for half in range(1, end // 2 + 1):
        if w[last] == w[last - half] and w[end - half : end] == w[end - 2 * half : end - half]:
            return half
    return 0


def ends_in_square(w: Word) -> bool:
    return square_half_ending_at(w, len(w)) > 0


def find_square(w: Word) -> Square | None:
    """The square with the leftmost end position (shortest one on ties), or None."""
    for end in range(2, len(w) + 1):
        half = square_half_ending_at(w, end)
        if half:
            return Square(end - 2 * half, half)
    return None


def is_square_free(w: Word) -> bool:
    return find_square(w) is None


def extension_is_square_free(w: Word, c: Letter | str) -> bool:
    """Square-freeness of ``w + c`` for a square-free ``w``: only suffix squares can appear."""
    return not ends_in_square(w + letter_char(c))


def reverse(w: Word) -> Word:
    return w[::-1]


def is_palindrome(w: Word) -> bool:
    return w == w[::-1]


def canonical(w: Word) -> Word:
    """Representative of the pair {w, reverse(w)}."""
    return min(w, w[::-1])


@dataclass(frozen=True)
class LetterPermutation:
    """Bijection of the alphabet; ``mapping[i]`` is the image of letter i."""

    mapping: tuple[int, int, int]

    def __post_init__(self) -> None:
        if tuple(sorted(self.mapping)) != (0, 1, 2):
            raise DataException(f"letter mapping is not a bijection: {self.mapping}")

    @cached_property
    def table(self) -> dict[int, int]:
        return str.maketrans(ALPHABET, "".join(str(m) for m in self.mapping))

    def __call__(self, c: Letter) -> Letter:
        return self.mapping[c]

    def compose(self, other: "LetterPermutation") -> "LetterPermutation":
        """``self ∘ other``: apply ``other`` first."""
        return LetterPermutation(tuple(self.mapping[other.mapping[i]] for i in range(3)))

    def power(self, k: int) -> "LetterPermutation":
        result = IDENTITY
        for _ in range(k % 6):
            result = self.compose(result)
        return result

    def inverse(self) -> "LetterPermutation":
        inv = [0, 0, 0]
        for i, m in enumerate(self.mapping):
            inv[m] = i
        return LetterPermutation(tuple(inv))


IDENTITY = LetterPermutation((0, 1, 2))
# cyclic shift 0 -> 1 -> 2 -> 0
TAU = LetterPermutation((1, 2, 0))
TAU2 = TAU.power(2)
ALL_PERMUTATIONS = tuple(LetterPermutation(p) for p in itertools.permutations(range(3)))


def permute(w: Word, p: LetterPermutation) -> Word:
    return w.translate(p.table)


def normalizing_permutation(w: Word) -> LetterPermutation:
    """Permutation sending the first two (distinct) letters of ``w`` to 0 and 1."""
    if len(w) < 2 or w[0] == w[1]:
        raise DataException(f"need two distinct leading letters to normalise {w!r}")
    a, b = int(w[0]), int(w[1])
    mapping = [0, 0, 0]
    mapping[a], mapping[b], mapping[3 - a - b] = 0, 1, 2
    return LetterPermutation(tuple(mapping))
