"""Worker-count handling for the basis-tuple sweeps.

Checkers split their tuple space into chunks and merge the results after
sorting, so output never depends on the number of workers.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor

from .errors import TrialabError


def worker_count() -> int:
    raw = os.environ.get("TRIALAB_THREADS")
    if raw is None or raw == "":
        return 1
    try:
        n = int(raw)
    except ValueError:
        raise TrialabError(f"TRIALAB_THREADS must be a positive integer, got {raw!r}") from None
    if n < 1:
        raise TrialabError(f"TRIALAB_THREADS must be a positive integer, got {raw!r}")
    return n


def chunked_map(fn, chunks: list) -> list:
    """Apply ``fn`` to each chunk, preserving chunk order."""
    n = min(worker_count(), len(chunks))
    if n <= 1:
        return [fn(c) for c in chunks]
    with ThreadPoolExecutor(max_workers=n) as pool:
        return list(pool.map(fn, chunks))
