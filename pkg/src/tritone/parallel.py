"""Row-band partitioning for the threaded per-pixel stages."""

from __future__ import annotations

import os

__all__ = ["resolve_threads", "row_bands"]


def resolve_threads(requested: int) -> int:
    """Map a thread-count request to a concrete worker count (0 = auto)."""
    if requested < 0:
        raise ValueError(f"thread count must be >= 0, got {requested}")
    if requested == 0:
        return os.cpu_count() or 1
    return requested


def row_bands(height: int, workers: int) -> list[tuple[int, int]]:
    """Split ``height`` rows into at most ``workers`` contiguous bands."""
    workers = max(1, min(workers, height))
    step = -(-height // workers)
    return [(y, min(y + step, height)) for y in range(0, height, step)]
