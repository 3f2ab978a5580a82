"""
Common configuration settings used across the application.

This module contains general settings like logging, cache location, worker
counts, batch sizes and the fixed constants of the ternary alphabet.
"""

import os
from pathlib import Path

log_level = os.environ.get("BRINKHUIS_LOG_LEVEL", "INFO").upper()
# JSON lines on stderr by default; set BRINKHUIS_LOG_JSON=false for plain text
log_json = os.environ.get("BRINKHUIS_LOG_JSON", "true").lower() in ("1", "true", "yes")

cache_dir = Path(
    os.environ.get("BRINKHUIS_CACHE_DIR", Path.home() / ".cache" / "brinkhuis")
)

# process-pool size for sharded enumeration; 1 runs everything in-process
workers = int(os.environ.get("BRINKHUIS_WORKERS", os.cpu_count() or 1))

# depth of the fixed prefixes the enumeration DFS is split on
prefix_depth = int(os.environ.get("BRINKHUIS_PREFIX_DEPTH", "8"))

# rows per numpy batch in the square scanner (one row = one composed word)
scan_batch = int(os.environ.get("BRINKHUIS_SCAN_BATCH", "65536"))

reference_path = Path(
    os.environ.get(
        "BRINKHUIS_REFERENCE_PATH",
        Path(__file__).resolve().parents[2] / "configs" / "reference.yaml",
    )
)

SCHEMA_VERSION = 1

# counts are 64-bit unsigned; anything larger is out of range
MAX_COUNT = 2**64 - 1

ALPHABET = "012"

# head/tail forms forced on every word of a special triple whose first word starts 01
family_heads = {
    "A1": ("012021", "120210"),
    "A2": ("012102", "201210"),
}
family_min_length = 13
