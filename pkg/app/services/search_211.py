"""
Exhaustive search for n-Brinkhuis (2,1,1)-triples: B0 = {x, y}, B1 = {u}, B2 = {v}.

Normalisations: a global letter permutation keeps every condition, so x starts
with 01; the two words of B0 are unordered; swapping the roles of B1 and B2 is
the letter permutation that fixes 0, so u < v.

A (2,1,1)-triple is valid exactly when (x, u, v) and (y, u, v) are valid
(1,1,1)-triples and the four composed words xuy, yux, xvy, yvx are square-free.
Two-block joins are precomputed once as a boolean matrix; three-block words are
scanned in numpy batches per x; the cross words only need the squares that span
the whole middle block.
"""

import logging
import time
from dataclasses import dataclass

import numpy as np

import app.config.common as config
from app.core.datatypes import Search211Record
from app.core.exceptions import DataException, ResourceLimitException
from app.core.square_scan import encode, square_mask
from app.core.words import Word
from app.services.enumeration import Family, family_profile
from app.services.triples import BrinkhuisTriple, spanning_square

logger = logging.getLogger(__name__)

# (1,1,1) patterns over the roles x=0, u=1, v=2
_PATTERNS_XU = ((0, 1, 0), (1, 0, 1))
_PATTERNS_XV = ((0, 2, 0), (2, 0, 2))
_PATTERNS_UV = ((1, 2, 1), (2, 1, 2))
_PATTERNS_XUV = ((0, 1, 2), (0, 2, 1), (1, 0, 2), (1, 2, 0), (2, 0, 1), (2, 1, 0))


@dataclass(frozen=True)
class Search211Result:
    n: int
    checked: int
    triple: BrinkhuisTriple | None = None

    @property
    def found(self) -> bool:
        return self.triple is not None

    def to_record(self) -> Search211Record:
        record: Search211Record = {"n": self.n, "found": self.found, "checked": self.checked}
        if self.triple is not None:
            record["b0"] = list(self.triple.b0)
            record["b1"] = list(self.triple.b1)
            record["b2"] = list(self.triple.b2)
        return record


class _Search:
    def __init__(self, n: int, deadline: float | None):
        self.n = n
        self.deadline = deadline
        self.words: list[Word] = family_profile(n, n, Family.ALL)[n]
        self.rows = encode(self.words)
        self.checked = 0
        self.joins = self._join_matrix()
        # square-free both ways round
        self.mutual = self.joins & self.joins.T
        np.fill_diagonal(self.mutual, False)

    def _join_matrix(self) -> np.ndarray:
        """joins[i, j]: words[i] + words[j] is square-free."""
        size = len(self.words)
        joins = np.zeros((size, size), dtype=bool)
        step = max(1, config.scan_batch // max(size, 1))
        for lo in range(0, size, step):
            hi = min(lo + step, size)
            left = np.repeat(self.rows[lo:hi], size, axis=0)
            right = np.tile(self.rows, (hi - lo, 1))
            found = square_mask(np.hstack([left, right]))
            joins[lo:hi] = ~found.reshape(hi - lo, size)
            self.checked += len(found)
        return joins

    def _square_free_rows(self, roles: list[np.ndarray], patterns) -> np.ndarray:
        """For each candidate (one index per role), whether all pattern words are square-free."""
        count = len(roles[0])
        ok = np.ones(count, dtype=bool)
        if count == 0:
            return ok
        for pattern in patterns:
            for lo in range(0, count, config.scan_batch):
                hi = min(lo + config.scan_batch, count)
                live = np.flatnonzero(ok[lo:hi]) + lo
                if not live.size:
                    continue
                composed = np.hstack([self.rows[roles[r][live]] for r in pattern])
                ok[live] &= ~square_mask(composed)
                self.checked += live.size
        return ok

    def _check_deadline(self) -> None:
        if self.deadline is not None and time.monotonic() > self.deadline:
            raise ResourceLimitException(
                f"(2,1,1) search at n={self.n} ran out of its time budget"
            )

    def _valid_111(self, x: int, us: np.ndarray, vs: np.ndarray) -> np.ndarray:
        xs = np.full(len(us), x)
        ok = self._square_free_rows([xs, us, vs], _PATTERNS_UV)
        live = np.flatnonzero(ok)
        ok[live] = self._square_free_rows([xs[live], us[live], vs[live]], _PATTERNS_XUV)
        return ok

    def _cross_free(self, x: Word, y: Word, u: Word, v: Word) -> bool:
        return (
            spanning_square(x, u, y) is None
            and spanning_square(y, u, x) is None
            and spanning_square(x, v, y) is None
            and spanning_square(y, v, x) is None
        )

    def _partners(self, x: int, u: int, v: int) -> BrinkhuisTriple | None:
        """A second B0 word y completing (x, u, v), or None."""
        # x and y are never adjacent in a composed word, so only joins with u and v matter
        ys = np.flatnonzero(self.mutual[u] & self.mutual[v])
        prefix = self.words[x][:2]
        # a y that also starts with 01 is paired only when x < y; the other order is searched from y
        ys = np.array(
            [
                y
                for y in ys
                if y not in (x, u, v) and not (self.words[y].startswith(prefix) and y < x)
            ],
            dtype=np.intp,
        )
        if not ys.size:
            return None
        us = np.full(len(ys), u)
        vs = np.full(len(ys), v)
        # uvu and vuv were settled together with x
        ok = self._square_free_rows([ys, us, vs], _PATTERNS_XU + _PATTERNS_XV + _PATTERNS_XUV)
        words = self.words
        for y in ys[ok]:
            self.checked += 4
            if self._cross_free(words[x], words[y], words[u], words[v]):
                return BrinkhuisTriple(self.n, (words[x], words[y]), (words[u],), (words[v],))
        return None

    def run(self) -> BrinkhuisTriple | None:
        prefix = "01"[: min(self.n, 2)]
        for x, word in enumerate(self.words):
            if not word.startswith(prefix):
                continue
            self._check_deadline()
            around = np.flatnonzero(self.mutual[x])
            if not around.size:
                continue
            xs = np.full(len(around), x)
            good = around[self._square_free_rows([xs, around], _PATTERNS_XU)]
            if good.size < 2:
                continue
            # blocks u and v each need xux, uxu (and xvx, vxv) square-free: same set
            us, vs = np.meshgrid(good, good, indexing="ij")
            us, vs = us.ravel(), vs.ravel()
            keep = (us < vs) & self.mutual[us, vs]
            us, vs = us[keep], vs[keep]
            ok = self._valid_111(x, us, vs)
            for u, v in zip(us[ok], vs[ok]):
                triple = self._partners(x, int(u), int(v))
                if triple is not None:
                    return triple
        return None


def search_211(n: int, budget_seconds: float | None = None) -> Search211Result:
    """First (2,1,1)-triple of length n in search order, or a negative result."""
    if n < 1:
        raise DataException(f"word length must be positive, got {n}")
    start = time.monotonic()
    deadline = start + budget_seconds if budget_seconds is not None else None
    search = _Search(n, deadline)
    triple = search.run()
    logger.info(
        f"(2,1,1) search: {'witness found' if triple else 'none found'}",
        extra={
            "n": n,
            "checked": search.checked,
            "duration_ms": round((time.monotonic() - start) * 1000),
        },
    )
    return Search211Result(n, search.checked, triple)
