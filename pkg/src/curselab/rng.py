"""Reproducible random streams for Monte Carlo work.

All randomized routines in this package draw from counter-based Philox
streams keyed by ``(seed, task_index)``.  Distinct task indices give
statistically independent substreams, so chunked Monte Carlo loops can be
distributed over threads and still reduce to the same result in the same
order, no matter how many workers run the chunks.
"""

from __future__ import annotations

import numpy as np

__all__ = ["substream", "chunk_sizes"]


def substream(seed: int, task_index: int = 0) -> np.random.Generator:
    """Generator for substream ``task_index`` of the stream keyed by ``seed``."""
    if seed < 0:
        raise ValueError("seed must be a non-negative integer")
    if task_index < 0:
        raise ValueError("task_index must be a non-negative integer")
    key = np.array([seed, task_index], dtype=np.uint64)
    return np.random.Generator(np.random.Philox(key=key))


def chunk_sizes(total: int, chunk: int = 1 << 14) -> list[int]:
    """Fixed chunking of ``total`` samples; independent of worker count."""
    if total < 0:
        raise ValueError("total must be non-negative")
    full, rest = divmod(total, chunk)
    sizes = [chunk] * full
    if rest:
        sizes.append(rest)
    return sizes
