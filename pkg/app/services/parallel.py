"""
Process-pool fan-out for CPU-bound shards (enumeration subtrees, scan chunks).

Results always come back in shard order, so callers merge deterministically no
matter how many workers ran.
"""

import logging
import multiprocessing
from concurrent.futures import ProcessPoolExecutor
from typing import Callable, Sequence, TypeVar

import app.config.common as config

logger = logging.getLogger(__name__)

S = TypeVar("S")
R = TypeVar("R")


def _mp_context():
    # no plain fork once numpy threads may be live
    methods = multiprocessing.get_all_start_methods()
    return multiprocessing.get_context("forkserver" if "forkserver" in methods else "spawn")


def resolve_workers(workers: int | None) -> int:
    return max(1, workers if workers is not None else config.workers)


def map_shards(
    fn: Callable[[S], R], shards: Sequence[S], workers: int | None = None
) -> list[R]:
    """Apply a picklable ``fn`` to every shard; in-process when one worker suffices."""
    n_workers = min(resolve_workers(workers), len(shards))
    if n_workers <= 1:
        return [fn(shard) for shard in shards]
    logger.debug(f"Fanning out {len(shards)} shards over {n_workers} processes")
    chunksize = max(1, len(shards) // (n_workers * 4))
    with ProcessPoolExecutor(max_workers=n_workers, mp_context=_mp_context()) as pool:
        return list(pool.map(fn, shards, chunksize=chunksize))
