"""
Search for optimal special n-Brinkhuis triples in one head/tail family.

Step 1 keeps the admissible generators: palindromes and pair representatives
that generate a special triple on their own. Step 2 builds the feasibility
hypergraph: a pair edge when two generators together still generate one, a
triple edge when three do. Only the composed words that draw blocks from every
generator of the pair or triple are scanned, the rest were covered a step
earlier. Step 3 is a branch and bound for the heaviest vertex set whose 3-subsets
are all triple edges (palindromes weigh 1, pairs weigh 2).
"""

import itertools
import logging
import time
from dataclasses import dataclass, field
from typing import Any, Iterable, Iterator, Mapping, Sequence

import numpy as np

import app.config.common as config
from app.core.cache import DiskCache
from app.core.datatypes import CatalogRecord, HypergraphRecord, OptimumRecord, SearchRowRecord
from app.core.exceptions import DataException, FamilyLengthException, ParseException
from app.core.square_scan import square_flags
from app.core.words import Word, canonical, is_palindrome, is_square_free, reverse
from app.services.enumeration import (
    Family,
    count_profile,
    enumerate_family,
    family_profile,
    format_word_list,
    parse_word_list,
)
from app.services.triples import (
    Condition,
    GeneratorSet,
    Signature,
    heads_tails_filter,
    mixed_conditions,
    verify_special_triple,
)

logger = logging.getLogger(__name__)


def _orbit(g: Word) -> tuple[Word, ...]:
    return (g,) if is_palindrome(g) else (g, reverse(g))


def _failing_groups(groups: Iterable[Iterable[Condition]]) -> list[bool]:
    """For each group of conditions, whether any composed word has a square."""
    failing: list[bool] = []
    words: list[Word] = []
    owners: list[int] = []

    def flush() -> None:
        if not words:
            return
        hits = square_flags(words)
        for owner in np.unique(np.asarray(owners)[hits]):
            failing[int(owner)] = True
        words.clear()
        owners.clear()

    for idx, group in enumerate(groups):
        failing.append(False)
        for c in group:
            words.append("".join(c))
            owners.append(idx)
        if len(words) >= config.scan_batch:
            flush()
    flush()
    return failing


def is_admissible(w: Word) -> bool:
    """Whether w alone (with its reversal) generates a special triple."""
    if not is_square_free(w):
        raise DataException(f"{w!r} is not square-free")
    family = heads_tails_filter(w)
    if family is None:
        raise DataException(f"{w!r} is neither of the A1 nor of the A2 form")
    return verify_special_triple(GeneratorSet.from_words(len(w), family, [w])).valid


@dataclass(frozen=True)
class AdmissibleCatalog:
    n: int
    family: Family
    palindromes: tuple[Word, ...]
    pair_reps: tuple[Word, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "palindromes", tuple(sorted(self.palindromes)))
        object.__setattr__(self, "pair_reps", tuple(sorted(self.pair_reps)))

    @classmethod
    def from_generators(cls, n: int, family: Family, generators: Iterable[Word]) -> "AdmissibleCatalog":
        generators = list(generators)
        return cls(
            n,
            family,
            tuple(g for g in generators if is_palindrome(g)),
            tuple(g for g in generators if not is_palindrome(g)),
        )

    @property
    def b_p(self) -> int:
        return len(self.palindromes)

    @property
    def b_n(self) -> int:
        return len(self.pair_reps)

    @property
    def generators(self) -> tuple[Word, ...]:
        return tuple(sorted(self.palindromes + self.pair_reps))

    @property
    def weights(self) -> list[int]:
        return [1 if is_palindrome(g) else 2 for g in self.generators]

    def generator_set(self, indices: Iterable[int]) -> GeneratorSet:
        gens = self.generators
        return GeneratorSet.from_words(self.n, self.family, [gens[i] for i in indices])

    def to_record(self) -> CatalogRecord:
        return {
            "n": self.n,
            "family": self.family.value,
            "b_p": self.b_p,
            "b_n": self.b_n,
            "palindromes": list(self.palindromes),
            "pair_reps": list(self.pair_reps),
        }


def _check_family(n: int, family: Family) -> None:
    if family is Family.ALL:
        raise DataException("the search runs on the A1 or A2 family")
    if n < family.min_length:
        raise FamilyLengthException(f"{family.value} words need length >= {family.min_length}, got {n}")


def build_catalog(
    n: int,
    family: Family,
    cache: DiskCache | None = None,
    words: Sequence[Word] | None = None,
) -> AdmissibleCatalog:
    """Step 1: admissible palindromes and pair representatives of the family."""
    _check_family(n, family)
    if cache is not None:
        text = cache.get("catalogs", family.value, n)
        if text is not None:
            try:
                return AdmissibleCatalog.from_generators(n, family, parse_word_list(text))
            except ParseException as e:
                logger.warning(f"Ignoring unreadable catalog for {family.value}-{n}: {e}")

    start = time.time()
    if words is None:
        words = enumerate_family(n, family, cache=cache)
    candidates = sorted({canonical(w) for w in words})
    failing = _failing_groups(mixed_conditions([_orbit(g)]) for g in candidates)
    admissible = [g for g, bad in zip(candidates, failing) if not bad]
    catalog = AdmissibleCatalog.from_generators(n, family, admissible)
    logger.info(
        f"Admissible generators: b_p={catalog.b_p}, b_n={catalog.b_n}",
        extra={"family": family.value, "n": n, "duration_ms": round((time.time() - start) * 1000)},
    )
    if cache is not None:
        cache.set("catalogs", format_word_list(catalog.generators), family.value, n)
    return catalog


@dataclass(frozen=True)
class FeasibleHypergraph:
    catalog: AdmissibleCatalog
    pair_edges: frozenset[tuple[int, int]]
    triple_edges: frozenset[tuple[int, int, int]]

    def __post_init__(self) -> None:
        size = len(self.catalog.generators)
        for edge in itertools.chain(self.pair_edges, self.triple_edges):
            if list(edge) != sorted(set(edge)) or edge[-1] >= size or edge[0] < 0:
                raise DataException(f"edge {edge} does not index the {size} generators")
        for i, j, l in self.triple_edges:
            if not {(i, j), (i, l), (j, l)} <= self.pair_edges:
                raise DataException(f"triple edge {(i, j, l)} lacks one of its pair edges")

    @property
    def vertices(self) -> tuple[Word, ...]:
        return self.catalog.generators

    @property
    def t(self) -> int:
        return len(self.triple_edges)

    def is_feasible(self, indices: Iterable[int]) -> bool:
        """Singletons are admissible; pairs need a pair edge; larger sets need every 3-subset."""
        chosen = sorted(set(indices))
        if len(chosen) == 2:
            return tuple(chosen) in self.pair_edges
        return all(trio in self.triple_edges for trio in itertools.combinations(chosen, 3))

    def to_record(self) -> HypergraphRecord:
        return {
            "n": self.catalog.n,
            "family": self.catalog.family.value,
            "vertices": len(self.vertices),
            "pair_edges": len(self.pair_edges),
            "t": self.t,
        }


def _edge_header(catalog: AdmissibleCatalog) -> str:
    return (
        f"# n={catalog.n} family={catalog.family.value} "
        f"generators={len(catalog.generators)} b_p={catalog.b_p} b_n={catalog.b_n}"
    )


def format_edge_list(h: FeasibleHypergraph) -> str:
    lines = [_edge_header(h.catalog)]
    lines += [f"{i} {j}" for i, j in sorted(h.pair_edges)]
    lines += [f"{i} {j} {l}" for i, j, l in sorted(h.triple_edges)]
    return "\n".join(lines) + "\n"


def parse_edge_list(text: str, catalog: AdmissibleCatalog) -> FeasibleHypergraph:
    lines = text.splitlines()
    if not lines or lines[0].strip() != _edge_header(catalog):
        raise ParseException("edge list header does not match the catalog")
    pairs: set[tuple[int, int]] = set()
    triples: set[tuple[int, int, int]] = set()
    for lineno, line in enumerate(lines[1:], start=2):
        fields = line.split()
        if not fields:
            continue
        try:
            ids = tuple(int(f) for f in fields)
        except ValueError:
            raise ParseException(f"edge list line {lineno}: {line!r}") from None
        if len(ids) == 2:
            pairs.add(ids)
        elif len(ids) == 3:
            triples.add(ids)
        else:
            raise ParseException(f"edge list line {lineno}: expected 2 or 3 indices")
    return FeasibleHypergraph(catalog, frozenset(pairs), frozenset(triples))


def build_hypergraph(c: AdmissibleCatalog, cache: DiskCache | None = None) -> FeasibleHypergraph:
    """Step 2: feasible pairs and triples of admissible generators."""
    key = (c.family.value, c.n)
    if cache is not None:
        text = cache.get("edges", *key)
        if text is not None:
            try:
                return parse_edge_list(text, c)
            except (ParseException, DataException) as e:
                logger.warning(f"Ignoring stale edge list for {c.family.value}-{c.n}: {e}")

    start = time.time()
    orbits = [_orbit(g) for g in c.generators]
    size = len(orbits)
    pairs = list(itertools.combinations(range(size), 2))
    failing = _failing_groups(mixed_conditions([orbits[i], orbits[j]]) for i, j in pairs)
    pair_edges = frozenset(p for p, bad in zip(pairs, failing) if not bad)

    neighbours: list[set[int]] = [set() for _ in range(size)]
    for i, j in pair_edges:
        neighbours[i].add(j)
        neighbours[j].add(i)
    candidates = [
        (i, j, l)
        for i, j in sorted(pair_edges)
        for l in sorted(neighbours[i] & neighbours[j])
        if l > j
    ]
    failing = _failing_groups(
        mixed_conditions([orbits[i], orbits[j], orbits[l]]) for i, j, l in candidates
    )
    triple_edges = frozenset(t for t, bad in zip(candidates, failing) if not bad)

    h = FeasibleHypergraph(c, pair_edges, triple_edges)
    logger.info(
        f"Feasibility hypergraph: {len(pair_edges)} pair edges, t={h.t} of {len(candidates)} candidates",
        extra={"family": c.family.value, "n": c.n, "duration_ms": round((time.time() - start) * 1000)},
    )
    if cache is not None:
        cache.set("edges", format_edge_list(h), *key)
    return h


@dataclass(frozen=True)
class OptimalResult:
    k_opt: int
    optima: tuple[tuple[Signature, GeneratorSet], ...]

    @property
    def signatures(self) -> tuple[Signature, ...]:
        return tuple(sig for sig, _ in self.optima)

    def to_records(self) -> list[OptimumRecord]:
        return [
            {
                "k_p": sig.k_p,
                "k_n": sig.k_n,
                "k": sig.k,
                "palindromes": list(g.palindromes),
                "pair_reps": list(g.pair_reps),
            }
            for sig, g in self.optima
        ]


class _BranchAndBound:
    """
    Maximum-weight sets whose 3-subsets are all triple edges.

    Vertices are taken in order of descending weight, then descending triple
    degree. Candidate sets are bitsets over that order, narrowed by the pair
    adjacency of the new vertex and by the triple edges it closes with every
    chosen vertex. The bound is a greedy colouring of the candidates in the pair
    graph: a feasible set holds at most one vertex per colour class. Subtrees
    are cut only when they cannot reach the incumbent weight, so every tied
    optimum is visited.
    """

    def __init__(self, h: FeasibleHypergraph):
        self.h = h
        weights = h.catalog.weights
        size = len(weights)
        degree = [0] * size
        for edge in h.triple_edges:
            for v in edge:
                degree[v] += 1
        self.order = sorted(range(size), key=lambda v: (-weights[v], -degree[v], v))
        pos = {v: i for i, v in enumerate(self.order)}
        self.weight = [weights[v] for v in self.order]
        self.adj = [0] * size
        for u, v in h.pair_edges:
            self.adj[pos[u]] |= 1 << pos[v]
            self.adj[pos[v]] |= 1 << pos[u]
        self.closes: dict[tuple[int, int], int] = {}
        for edge in h.triple_edges:
            a, b, c = sorted(pos[v] for v in edge)
            for x, y, z in ((a, b, c), (a, c, b), (b, c, a)):
                self.closes[(x, y)] = self.closes.get((x, y), 0) | (1 << z)
        self.best = 0
        self.found: dict[Signature, tuple[Word, ...]] = {}

    def _colour_bound(self, cand: int) -> int:
        bound = 0
        rest = cand
        while rest:
            # lowest position first: the heaviest vertex of its class
            low = rest & -rest
            bound += self.weight[low.bit_length() - 1]
            avail = rest
            while avail:
                low = avail & -avail
                v = low.bit_length() - 1
                rest &= ~low
                avail &= ~low & ~self.adj[v]
        return bound

    def _record(self, chosen: list[int], weight: int) -> None:
        if weight < self.best:
            return
        if weight > self.best:
            self.best = weight
            self.found.clear()
        words = sorted(self.h.vertices[self.order[i]] for i in chosen)
        k_p = sum(1 for i in chosen if self.weight[i] == 1)
        signature = Signature(k_p, len(chosen) - k_p)
        key = tuple(words)
        if signature not in self.found or key < self.found[signature]:
            self.found[signature] = key

    def _expand(self, chosen: list[int], weight: int, cand: int) -> None:
        self._record(chosen, weight)
        while cand:
            if weight + self._colour_bound(cand) < self.best:
                return
            low = cand & -cand
            v = low.bit_length() - 1
            cand ^= low
            narrowed = cand & self.adj[v]
            for s in chosen:
                narrowed &= self.closes.get((s, v), 0)
            chosen.append(v)
            self._expand(chosen, weight + self.weight[v], narrowed)
            chosen.pop()

    def run(self) -> tuple[int, dict[Signature, tuple[Word, ...]]]:
        self._expand([], 0, (1 << len(self.order)) - 1)
        return self.best, self.found


def optimal_triple(c: AdmissibleCatalog, h: FeasibleHypergraph | None = None) -> OptimalResult:
    """Step 3: k_opt and one lexicographically least generator set per optimal signature."""
    if h is None:
        h = build_hypergraph(c)
    start = time.time()
    best, found = _BranchAndBound(h).run()
    optima = tuple(
        (sig, GeneratorSet.from_words(c.n, c.family, found[sig]))
        for sig in sorted(found, key=lambda s: (-s.k_p, s.k_n))
    )
    logger.info(
        f"Optimal special triples: signatures {[tuple(s) for s, _ in optima]}",
        extra={
            "family": c.family.value,
            "n": c.n,
            "k_opt": best,
            "duration_ms": round((time.time() - start) * 1000),
        },
    )
    return OptimalResult(best, optima)


@dataclass(frozen=True)
class SearchRow:
    n: int
    family: Family
    a: int
    a_f: int
    a_fp: int
    a_fn: int
    b_fp: int
    b_fn: int
    t_f: int
    signature: Signature | None
    k_opt: int | None
    signatures: tuple[Signature, ...] = field(default=())

    def __post_init__(self) -> None:
        if self.k_opt and self.signature is not None and self.signature.k != self.k_opt:
            raise DataException(f"signature {tuple(self.signature)} does not give k={self.k_opt}")

    def to_record(self) -> SearchRowRecord:
        return {
            "n": self.n,
            "family": self.family.value,
            "a": self.a,
            "a_f": self.a_f,
            "a_fp": self.a_fp,
            "a_fn": self.a_fn,
            "b_fp": self.b_fp,
            "b_fn": self.b_fn,
            "t_f": self.t_f,
            "signature": list(self.signature) if self.signature is not None else None,
            "k_opt": self.k_opt,
        }


def _assemble_row(
    n: int,
    family: Family,
    a: int,
    words: Sequence[Word],
    steps: str,
    cache: DiskCache | None,
) -> SearchRow:
    palindromes = sum(1 for w in words if is_palindrome(w))
    catalog = build_catalog(n, family, cache=cache, words=words)
    h = build_hypergraph(catalog, cache=cache)
    signature: Signature | None = None
    k_opt: int | None = None
    signatures: tuple[Signature, ...] = ()
    if "3" in steps:
        result = optimal_triple(catalog, h)
        k_opt = result.k_opt
        signatures = result.signatures
        signature = signatures[0] if signatures else Signature(0, 0)
    return SearchRow(
        n=n,
        family=family,
        a=a,
        a_f=len(words),
        a_fp=palindromes,
        a_fn=(len(words) - palindromes) // 2,
        b_fp=catalog.b_p,
        b_fn=catalog.b_n,
        t_f=h.t,
        signature=signature,
        k_opt=k_opt,
        signatures=signatures,
    )


def table_row(
    n: int,
    family: Family,
    steps: str = "123",
    a: int | None = None,
    cache: DiskCache | None = None,
    workers: int | None = None,
) -> SearchRow:
    _check_family(n, family)
    if a is None:
        a = count_profile(n, workers=workers, cache=cache)[n]
    words = enumerate_family(n, family, cache=cache)
    return _assemble_row(n, family, a, words, steps, cache)


def table_rows(
    min_n: int,
    max_n: int,
    family: Family,
    steps: str = "123",
    cache: DiskCache | None = None,
    workers: int | None = None,
) -> Iterator[SearchRow]:
    """Rows for a range of lengths from one count profile and one family DFS."""
    _check_family(min_n, family)
    counts = count_profile(max_n, workers=workers, cache=cache)
    words_by_n = family_profile(min_n, max_n, family)
    for n in range(min_n, max_n + 1):
        if cache is not None:
            cache.set("words", format_word_list(words_by_n[n]), family.value, n)
        yield _assemble_row(n, family, counts[n], words_by_n[n], steps, cache)


# columns compared cell by cell against a published row
COMPARED_COLUMNS = ("a", "a_f", "a_fp", "a_fn", "b_fp", "b_fn", "t_f", "k_opt")


def compare_row(row: SearchRow, published: Mapping[str, Any]) -> list[str]:
    """Names of the cells that deviate from the published row; unknown cells are skipped."""
    record = row.to_record()
    mismatches = [
        column
        for column in COMPARED_COLUMNS
        if published.get(column) is not None
        and record[column] is not None
        and record[column] != published[column]
    ]
    expected = published.get("signature")
    if expected is not None and row.signature is not None:
        if Signature(*expected) not in (row.signatures or (row.signature,)):
            mismatches.append("signature")
    if mismatches:
        logger.warning(
            f"Row deviates from the published table in {mismatches}",
            extra={"family": row.family.value, "n": row.n},
        )
    return mismatches


def short_admissible_words(n: int) -> list[Word]:
    """Words of length n starting with 01 that generate a special triple on their own."""
    if n < 2:
        raise DataException(f"short generator check needs n >= 2, got {n}")
    candidates = [w for w in family_profile(n, n, Family.ALL)[n] if w.startswith("01")]
    failing = _failing_groups(mixed_conditions([_orbit(w)]) for w in candidates)
    return [w for w, bad in zip(candidates, failing) if not bad]
