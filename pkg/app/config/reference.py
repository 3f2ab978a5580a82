"""
Load the published reference data from configs/reference.yaml.

Reads the YAML path from BRINKHUIS_REFERENCE_PATH (default: configs/reference.yaml
at the repository root) and exposes counts, search-table rows, generator sets,
the 18-letter triple pair and the published bound decimals.
"""

import logging
from dataclasses import dataclass
from functools import lru_cache
from pathlib import Path
from typing import Any

import yaml

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ReferenceData:
    counts: dict[int, int]
    tables: dict[str, list[dict[str, Any]]]
    generator_sets: dict[str, dict[str, Any]]
    ez_triple: dict[str, Any]
    lower_bounds: list[dict[str, Any]]
    upper_bounds: list[dict[str, Any]]

    def table_row(self, family: str, n: int) -> dict[str, Any] | None:
        for row in self.tables.get(family, []):
            if row["n"] == n:
                return row
        return None

    def all_counts(self) -> dict[int, int]:
        """Published a(n): the explicit counts plus the 'a' column of the tables."""
        merged = dict(self.counts)
        for rows in self.tables.values():
            for row in rows:
                merged[row["n"]] = row["a"]
        return dict(sorted(merged.items()))


@lru_cache(maxsize=4)
def _load_yaml(path: Path) -> dict[str, Any]:
    if not path.exists():
        raise FileNotFoundError(
            f"reference.yaml not found at {path.resolve()}. "
            f"Set BRINKHUIS_REFERENCE_PATH to the reference data file"
        )
    with open(path) as f:
        data = yaml.safe_load(f)
    logger.info("Loaded reference data from %s", path.resolve())
    return data


def load_reference(path: str | Path) -> ReferenceData:
    raw = _load_yaml(Path(path))
    return ReferenceData(
        counts={int(k): int(v) for k, v in raw.get("counts", {}).items()},
        tables={family: list(rows) for family, rows in raw.get("tables", {}).items()},
        generator_sets=dict(raw.get("generator_sets", {})),
        ez_triple=dict(raw.get("ez_triple", {})),
        lower_bounds=list(raw.get("lower_bounds", [])),
        upper_bounds=list(raw.get("upper_bounds", [])),
    )
