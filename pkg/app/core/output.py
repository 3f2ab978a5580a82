import json
import logging
from typing import Any, Literal

import polars as pl

import app.config.common as config
from app.core.datatypes import OutputRecord

logger = logging.getLogger(__name__)

OutputFormat = Literal["json", "csv", "table"]
FORMATS: tuple[OutputFormat, ...] = ("json", "csv", "table")


def make_record(command: str, payload: Any) -> OutputRecord:
    return {"schema_version": config.SCHEMA_VERSION, "command": command, "payload": payload}


def _flat_cell(value: Any) -> Any:
    """Scalar form of a nested value for one CSV or table cell."""
    if isinstance(value, list):
        if all(isinstance(v, int) for v in value):
            return "(" + ",".join(str(v) for v in value) + ")"
        return " ".join(str(v) for v in value)
    if isinstance(value, dict):
        return json.dumps(value, separators=(",", ":"))
    return value


def _frame(payload: Any) -> pl.DataFrame:
    rows = payload if isinstance(payload, list) else [payload]
    flat = [{key: _flat_cell(value) for key, value in row.items()} for row in rows]
    if not flat:
        return pl.DataFrame()
    return pl.DataFrame(flat, infer_schema_length=None)


def render(command: str, payload: Any, fmt: OutputFormat = "table") -> str:
    """
    One output record as text.

    JSON mode emits the full record on one line; CSV and table modes flatten the
    payload rows (a dict payload is a single row) through a polars frame.
    """
    if fmt == "json":
        return json.dumps(make_record(command, payload))
    df = _frame(payload)
    if fmt == "csv":
        return df.write_csv().rstrip("\n")
    with pl.Config(
        tbl_hide_dataframe_shape=True,
        tbl_hide_column_data_types=True,
        tbl_rows=-1,
        tbl_cols=-1,
        fmt_str_lengths=1000,
        tbl_width_chars=1000,
    ):
        return str(df)


def parse_record(text: str) -> OutputRecord:
    record = json.loads(text)
    if record.get("schema_version") != config.SCHEMA_VERSION:
        logger.warning(f"Record schema version {record.get('schema_version')} differs from {config.SCHEMA_VERSION}")
    return record
