import logging
import os
import tempfile
from pathlib import Path

logger = logging.getLogger(__name__)


class DiskCache:
    """
    Text artifacts (word lists, catalogs, edge lists, count tables) under one directory.

    Entries are addressed by a kind (subdirectory) plus key parts and written
    through a temporary file and ``os.replace``, so a reader never sees a
    half-written entry. The cache has a single writer: the running CLI process.
    """

    def __init__(self, cache_dir: str | Path):
        self.cache_dir = Path(cache_dir)
        self.cache_dir.mkdir(parents=True, exist_ok=True)

    def _get_cache_path(self, kind: str, *key_parts, suffix: str = ".txt") -> Path:
        """Get the full path for a cache key, e.g. words/A1-25.txt."""
        name = "-".join(str(part) for part in key_parts)
        return self.cache_dir / kind / f"{name}{suffix}"

    def get(self, kind: str, *key_parts, suffix: str = ".txt") -> str | None:
        """Get an entry if it exists."""
        cache_path = self._get_cache_path(kind, *key_parts, suffix=suffix)
        if not cache_path.exists():
            return None
        try:
            return cache_path.read_text()
        except (OSError, UnicodeDecodeError) as e:
            logger.error(f"Error reading cache file {cache_path}: {e}")
            return None

    def set(self, kind: str, value: str, *key_parts, suffix: str = ".txt") -> None:
        """Atomically replace an entry."""
        cache_path = self._get_cache_path(kind, *key_parts, suffix=suffix)
        try:
            cache_path.parent.mkdir(parents=True, exist_ok=True)
            fd, tmp_name = tempfile.mkstemp(dir=cache_path.parent, prefix=".tmp-")
            with os.fdopen(fd, "w") as f:
                f.write(value)
            os.replace(tmp_name, cache_path)
        except OSError as e:
            # if we can't write, just skip caching
            logger.error(f"Error caching {kind}/{cache_path.name}: {e}")
