"""
Brute-force oracles and record validators for the test suite.

Every centre of every factor is tried and every word over the alphabet is
generated, so these only run at small lengths.
"""

import itertools
from typing import Any, Dict, Iterator, List, Optional, Tuple


def brute_force_square(w: str) -> Optional[Tuple[int, int]]:
    """(start, half) of the square with the leftmost end, shortest first; None if square-free."""
    for end in range(2, len(w) + 1):
        for half in range(1, end // 2 + 1):
            start = end - 2 * half
            if w[start : start + half] == w[start + half : end]:
                return start, half
    return None


def all_words(n: int) -> Iterator[str]:
    for letters in itertools.product("012", repeat=n):
        yield "".join(letters)


def square_free_words(n: int) -> List[str]:
    return [w for w in all_words(n) if brute_force_square(w) is None]


def has_square(words) -> bool:
    return any(brute_force_square(w) is not None for w in words)


def validate_record(record: Dict[str, Any], command: str) -> Dict[str, Any]:
    """
    Validate the envelope of a JSON output record.

    Returns:
        Dict with validation results:
        - valid: bool
        - errors: list of error messages
    """
    result: Dict[str, Any] = {"valid": False, "errors": []}
    if set(record) != {"schema_version", "command", "payload"}:
        result["errors"].append(f"Unexpected record keys: {sorted(record)}")
    if record.get("schema_version") != 1:
        result["errors"].append(f"Unexpected schema version: {record.get('schema_version')}")
    if record.get("command") != command:
        result["errors"].append(f"Expected command {command}, got {record.get('command')}")
    if "payload" not in record:
        result["errors"].append("Record has no payload")
    result["valid"] = not result["errors"]
    return result


def validate_csv(text: str, expected_header: List[str]) -> Dict[str, Any]:
    """
    Validate CSV output structure.

    Returns:
        Dict with validation results:
        - valid: bool
        - header: list
        - num_data_lines: int
        - consistent_columns: bool
        - errors: list of error messages
    """
    result: Dict[str, Any] = {
        "valid": False,
        "header": None,
        "num_data_lines": 0,
        "consistent_columns": False,
        "errors": [],
    }
    lines = text.strip().split("\n")
    if not lines or not lines[0]:
        result["errors"].append("Output is empty")
        return result
    header = lines[0].split(",")
    result["header"] = header
    if header != expected_header:
        result["errors"].append(f"Header {header} differs from {expected_header}")
    data = lines[1:]
    result["num_data_lines"] = len(data)
    result["consistent_columns"] = all(len(line.split(",")) == len(header) for line in data)
    if not result["consistent_columns"]:
        result["errors"].append("Inconsistent column counts")
    result["valid"] = not result["errors"]
    return result
