"""
Depth-first enumeration and counting of ternary square-free words.

Words grow one letter at a time and only the squares ending at the new letter
are checked. Counting fixes the first two letters to "01" and multiplies by six:
every ordered pair of distinct letters starts exactly a(n)/6 words of length n.
The DFS is sharded on all square-free prefixes of a fixed depth and the subtree
counts are summed in shard order, so the result does not depend on the worker
count or the prefix depth.

The head/tail families fix the first six letters (A1: 012021, A2: 012102) and
force the last six (A1: 120210, A2: 201210); lengths below 13 are rejected.
"""

import itertools
import logging
import time
from dataclasses import dataclass
from enum import StrEnum
from functools import lru_cache, partial
from typing import Iterable, Mapping

import app.config.common as config
from app.core.cache import DiskCache
from app.core.datatypes import CountRecord, FamilyStatsRecord
from app.core.exceptions import (
    CountOverflowException,
    DataException,
    FamilyLengthException,
    MissingCountException,
    ParseException,
)
from app.core.words import Word, ends_in_square, is_palindrome, is_square_free, parse_word
from app.services.parallel import map_shards, resolve_workers

logger = logging.getLogger(__name__)

# table names used for the two head/tail families
_FAMILY_ALIASES = {"TRIP1": "A1", "TRIP2": "A2"}

# family DFS: free letters left before the tail check kicks in, and how much of the word it looks at
SUFFIX_LOOKAHEAD = 4
SUFFIX_CONTEXT = 12


class Family(StrEnum):
    ALL = "ALL"
    A1 = "A1"
    A2 = "A2"

    @property
    def head(self) -> Word:
        return "" if self is Family.ALL else config.family_heads[self.value][0]

    @property
    def tail(self) -> Word:
        return "" if self is Family.ALL else config.family_heads[self.value][1]

    @property
    def min_length(self) -> int:
        return 0 if self is Family.ALL else config.family_min_length

    def contains(self, w: Word) -> bool:
        return (
            len(w) >= self.min_length
            and w.startswith(self.head)
            and w.endswith(self.tail)
        )

    @classmethod
    def parse(cls, text: str) -> "Family":
        key = text.strip().upper()
        try:
            return cls(_FAMILY_ALIASES.get(key, key))
        except ValueError:
            raise ParseException(
                f"unknown family {text!r}; expected one of ALL, A1, A2, TRIP1, TRIP2"
            ) from None


# A(0)..A(3) in lexicographic order; A(3) is the pattern list of every composition
SMALL_WORDS: dict[int, tuple[Word, ...]] = {
    0: ("",),
    1: ("0", "1", "2"),
    2: ("01", "02", "10", "12", "20", "21"),
    3: (
        "010", "012", "020", "021",
        "101", "102", "120", "121",
        "201", "202", "210", "212",
    ),
}


@dataclass(frozen=True)
class FamilyStats:
    n: int
    family: Family
    total: int
    palindromes: int
    pairs: int

    def __post_init__(self) -> None:
        if self.total - self.palindromes != 2 * self.pairs:
            raise DataException(
                f"inconsistent family statistics for n={self.n}: total {self.total}, "
                f"palindromes {self.palindromes}, pairs {self.pairs}"
            )
        if self.n % 2 == 0 and self.n > 0 and self.palindromes:
            raise DataException(f"square-free palindromes of even length {self.n}")

    @classmethod
    def from_words(cls, n: int, family: Family, words: Iterable[Word]) -> "FamilyStats":
        words = list(words)
        palindromes = sum(1 for w in words if is_palindrome(w))
        return cls(n, family, len(words), palindromes, (len(words) - palindromes) // 2)

    def to_record(self) -> FamilyStatsRecord:
        return {
            "n": self.n,
            "family": self.family.value,
            "total": self.total,
            "palindromes": self.palindromes,
            "pairs": self.pairs,
        }


def _subtree_profile(prefix: Word, max_n: int) -> list[int]:
    """Number of square-free words of each length up to max_n that extend ``prefix``."""
    counts = [0] * (max_n + 1)

    def visit(w: Word) -> None:
        counts[len(w)] += 1
        if len(w) < max_n:
            for c in config.ALPHABET:
                x = w + c
                if not ends_in_square(x):
                    visit(x)

    if len(prefix) <= max_n and is_square_free(prefix):
        visit(prefix)
    return counts


def _split(w: Word, depth: int, shallow: list[int], shards: list[Word]) -> None:
    if len(w) == depth:
        shards.append(w)
        return
    shallow[len(w)] += 1
    for c in config.ALPHABET:
        x = w + c
        if not ends_in_square(x):
            _split(x, depth, shallow, shards)


def count_with_prefix(prefix: Word, n: int) -> int:
    """Square-free words of length n starting with ``prefix``."""
    if len(prefix) > n:
        return 0
    return _subtree_profile(prefix, n)[n]


def format_counts(profile: Mapping[int, int]) -> str:
    return "".join(f"{n} {a}\n" for n, a in sorted(profile.items()))


def parse_counts(text: str) -> dict[int, int]:
    counts: dict[int, int] = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        try:
            n, a = line.split()
            counts[int(n)] = int(a)
        except ValueError:
            raise ParseException(f"count table line {lineno}: expected 'n a', got {line!r}") from None
    return counts


def count_profile(
    max_n: int,
    workers: int | None = None,
    prefix_depth: int | None = None,
    cache: DiskCache | None = None,
) -> list[int]:
    """a(0..max_n) from one sharded DFS."""
    if max_n < 0:
        raise DataException(f"length must be non-negative, got {max_n}")
    if cache is not None:
        text = cache.get("counts", "a", max_n)
        if text is not None:
            try:
                cached = parse_counts(text)
                return [cached[n] for n in range(max_n + 1)]
            except (ParseException, KeyError) as e:
                logger.warning(f"Ignoring unreadable count cache entry for max_n={max_n}: {e}")

    start = time.time()
    if max_n < 2:
        profile = [1, 3][: max_n + 1]
    else:
        depth = min(max(prefix_depth or config.prefix_depth, 2), max_n)
        shallow = [0] * (max_n + 1)
        shards: list[Word] = []
        _split("01", depth, shallow, shards)
        for counts in map_shards(partial(_subtree_profile, max_n=max_n), shards, workers):
            for n in range(depth, max_n + 1):
                shallow[n] += counts[n]
        profile = [1, 3] + [6 * shallow[n] for n in range(2, max_n + 1)]

    for n, a in enumerate(profile):
        if a > config.MAX_COUNT:
            raise CountOverflowException(f"a({n}) exceeds the 64-bit count range")

    logger.info(
        f"Counted square-free words up to length {max_n}",
        extra={
            "n": max_n,
            "workers": resolve_workers(workers),
            "duration_ms": round((time.time() - start) * 1000),
        },
    )
    if cache is not None:
        cache.set("counts", format_counts(dict(enumerate(profile))), "a", max_n)
    return profile


def count_square_free(n: int, workers: int | None = None, cache: DiskCache | None = None) -> int:
    return count_profile(n, workers=workers, cache=cache)[n]


def count_records(profile: list[int], from_n: int = 0) -> list[CountRecord]:
    return [{"n": n, "a": a} for n, a in enumerate(profile) if n >= from_n]


def format_word_list(words: Iterable[Word]) -> str:
    return "".join(f"{w}\n" for w in words)


def parse_word_list(text: str) -> list[Word]:
    return [parse_word(line) for line in text.splitlines() if line.strip()]


def _all_words_profile(min_n: int, max_n: int) -> dict[int, list[Word]]:
    out: dict[int, list[Word]] = {n: [] for n in range(min_n, max_n + 1)}

    def visit(w: Word) -> None:
        if len(w) >= min_n:
            out[len(w)].append(w)
        if len(w) < max_n:
            for c in config.ALPHABET:
                x = w + c
                if not ends_in_square(x):
                    visit(x)

    visit("")
    return out


def family_profile(min_n: int, max_n: int, family: Family) -> dict[int, list[Word]]:
    """
    All family words of every length in [min_n, max_n] from a single DFS.

    The DFS walks square-free words that start with the family head; at every
    node the tail is appended letter by letter, so each list comes out in
    lexicographic order. Within ``SUFFIX_LOOKAHEAD`` letters of the longest
    length a node is only expanded if its last letters can still be bridged to
    the tail without a square.
    """
    if family is Family.ALL:
        return _all_words_profile(min_n, max_n)
    if min_n < family.min_length:
        raise FamilyLengthException(
            f"{family.value} words need length >= {family.min_length}, got {min_n}"
        )
    head, tail = family.head, family.tail
    out: dict[int, list[Word]] = {n: [] for n in range(min_n, max_n + 1)}
    core_max = max_n - len(tail)

    @lru_cache(maxsize=None)
    def bridges(context: Word, gap: int) -> bool:
        """Some gap letters put between context and the tail leave it square-free."""
        return any(
            is_square_free(context + "".join(u) + tail)
            for u in itertools.product(config.ALPHABET, repeat=gap)
        )

    def visit(w: Word) -> None:
        # a square in context + u + tail is a square in w + u + tail
        remaining = core_max - len(w)
        if remaining <= SUFFIX_LOOKAHEAD:
            context = w[-SUFFIX_CONTEXT:]
            shortest = max(0, min_n - len(tail) - len(w))
            if not any(bridges(context, gap) for gap in range(shortest, remaining + 1)):
                return
        if len(w) + len(tail) >= min_n:
            x = w
            for c in tail:
                x += c
                if ends_in_square(x):
                    break
            else:
                out[len(x)].append(x)
        if len(w) < core_max:
            for c in config.ALPHABET:
                x = w + c
                if not ends_in_square(x):
                    visit(x)

    if is_square_free(head):
        visit(head)
    return out


def enumerate_family(n: int, family: Family, cache: DiskCache | None = None) -> list[Word]:
    """Square-free words of length n in the family, lexicographically sorted."""
    if n < family.min_length:
        raise FamilyLengthException(
            f"{family.value} words need length >= {family.min_length}, got {n}"
        )
    if cache is not None:
        text = cache.get("words", family.value, n)
        if text is not None:
            try:
                return parse_word_list(text)
            except ParseException as e:
                logger.warning(f"Ignoring unreadable word list for {family.value}-{n}: {e}")

    start = time.time()
    words = family_profile(n, n, family)[n]
    logger.debug(
        f"Enumerated {len(words)} words",
        extra={"family": family.value, "n": n, "duration_ms": round((time.time() - start) * 1000)},
    )
    if cache is not None:
        cache.set("words", format_word_list(words), family.value, n)
    return words


def family_stats(n: int, family: Family, cache: DiskCache | None = None) -> FamilyStats:
    return FamilyStats.from_words(n, family, enumerate_family(n, family, cache=cache))


def _count(table: Mapping[int, int], n: int) -> int:
    try:
        return table[n]
    except KeyError:
        raise MissingCountException(f"a({n}) is missing from the count table") from None


def check_subadditivity(m: int, n: int, table: Mapping[int, int]) -> bool:
    """a(m+n) <= a(m)a(n), and for m, n >= 2 also 6 a(m+n-2) <= a(m)a(n)."""
    product = _count(table, m) * _count(table, n)
    if _count(table, m + n) > product:
        return False
    if m >= 2 and n >= 2:
        return 6 * _count(table, m + n - 2) <= product
    return True
