"""
Shared services built on first use: the disk cache and the published reference data.
"""

import logging
import threading
from pathlib import Path
from typing import Any, Callable

import app.config.common as config

logger = logging.getLogger(__name__)


class ServiceContainer:
    """Named factories; each service is built once and reused until re-registered."""

    def __init__(self):
        self._instances: dict[str, Any] = {}
        self._factories: dict[str, Callable[[], Any]] = {}
        self._lock = threading.Lock()

    def register(self, name: str, factory: Callable[[], Any]) -> None:
        with self._lock:
            self._factories[name] = factory
            self._instances.pop(name, None)

    def get(self, name: str) -> Any:
        with self._lock:
            if name not in self._instances:
                try:
                    factory = self._factories[name]
                except KeyError:
                    raise KeyError(f"Service '{name}' not registered") from None
                logger.debug(f"Building service {name}")
                self._instances[name] = factory()
            return self._instances[name]

    def reset(self) -> None:
        with self._lock:
            self._instances.clear()


container = ServiceContainer()


def use_cache_dir(cache_dir: Path) -> None:
    """Point the disk cache at another directory (CLI --cache-dir, tests)."""
    from app.core.cache import DiskCache

    container.register("disk_cache", lambda: DiskCache(cache_dir))


def _load_reference():
    from app.config.reference import load_reference

    return load_reference(config.reference_path)


use_cache_dir(config.cache_dir)
container.register("reference_data", _load_reference)
