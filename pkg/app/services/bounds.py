"""
Bounds on the growth rate s of ternary square-free words.

Every bound has the form base^(1/denominator). A special triple with k words per
block at length n gives s >= k^(1/(n-1)); a count a(n) gives
s <= (a(n)/6)^(1/(n-2)). Comparisons between bounds are exact: a^(1/p) <= b^(1/q)
exactly when a^q <= b^p, evaluated on Python integers.
"""

from dataclasses import dataclass, field
from functools import total_ordering
from typing import Any, Iterable, Mapping

from app.core.datatypes import BoundRecord, Direction
from app.core.exceptions import BoundDomainException

# significant digits of the rendered decimal
DISPLAY_DIGITS = 9


@total_ordering
@dataclass(frozen=True, eq=False)
class BoundReport:
    direction: Direction
    base: int
    denominator: int
    provenance: dict[str, int] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.base < 1 or self.denominator < 1:
            raise BoundDomainException(
                f"bound needs base >= 1 and denominator >= 1, got {self.base}^(1/{self.denominator})"
            )

    @property
    def decimal(self) -> float:
        return self.base ** (1.0 / self.denominator)

    @property
    def display(self) -> str:
        return f"{self.decimal:.{DISPLAY_DIGITS}g}"

    def _key(self, other: "BoundReport") -> tuple[int, int]:
        return self.base**other.denominator, other.base**self.denominator

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BoundReport):
            return NotImplemented
        mine, theirs = self._key(other)
        return mine == theirs

    def __lt__(self, other: "BoundReport") -> bool:
        mine, theirs = self._key(other)
        return mine < theirs

    def to_record(self) -> BoundRecord:
        return {
            "direction": self.direction,
            "base": self.base,
            "denominator": self.denominator,
            "decimal": float(self.display),
            "provenance": dict(self.provenance),
        }


def lower_bound(n: int, k: int) -> BoundReport:
    """k^(1/(n-1)) from a special n-triple with k words per block."""
    if n < 2:
        raise BoundDomainException(f"lower bound needs n >= 2, got {n}")
    if k < 1:
        raise BoundDomainException(f"lower bound needs k >= 1, got {k}")
    return BoundReport("lower", k, n - 1, {"n": n, "k": k})


def general_lower_bound(n: int, k0: int, k1: int, k2: int) -> BoundReport:
    """Lower bound from a general (k0, k1, k2)-triple: the smallest block decides."""
    report = lower_bound(n, min(k0, k1, k2))
    return BoundReport("lower", report.base, report.denominator, {"n": n, "k0": k0, "k1": k1, "k2": k2})


def upper_bound(n: int, a_n: int) -> BoundReport:
    """(a(n)/6)^(1/(n-2))."""
    if n < 3:
        raise BoundDomainException(f"upper bound needs n >= 3, got {n}")
    if a_n < 6 or a_n % 6:
        raise BoundDomainException(f"a({n}) = {a_n} is not a positive multiple of 6")
    return BoundReport("upper", a_n // 6, n - 2, {"n": n, "a": a_n})


def growth_ratio_bounds(counts: Mapping[int, int]) -> list[BoundReport]:
    """The upper bound of every usable entry of a count table, by n."""
    return [upper_bound(n, a) for n, a in sorted(counts.items()) if n >= 3]


def _row_key(row: Any) -> tuple[int, int | None]:
    if isinstance(row, tuple):
        return row
    return row.n, row.k_opt


def best_bounds(
    rows: Iterable[Any], counts: Mapping[int, int]
) -> tuple[BoundReport, BoundReport]:
    """
    Best lower bound over search rows (or (n, k_opt) pairs) and best upper
    bound over a count table.

    Rows without a positive k are skipped.
    """
    pairs = [_row_key(row) for row in rows]
    lowers = [lower_bound(n, k) for n, k in pairs if k is not None and k >= 1 and n >= 2]
    uppers = growth_ratio_bounds(counts)
    if not lowers:
        raise BoundDomainException("no row with k >= 1 to take a lower bound from")
    if not uppers:
        raise BoundDomainException("no count with n >= 3 to take an upper bound from")
    # max/min keep the first of equal bounds: the shortest n comes first
    return max(lowers), min(uppers)
