"""Seed handling and worker-stream derivation.

Splitting rule: worker w of a run seeded with s draws from
``default_rng(SeedSequence(s, spawn_key=(w,)))``.  Nested consumers
(e.g. one Monte Carlo posterior per sampled point) extend the spawn key,
so results depend only on (seed, worker-count), never on scheduling.
"""

from __future__ import annotations

import numpy as np

from .errors import ParameterError


def check_seed(seed: int) -> int:
    if not isinstance(seed, (int, np.integer)) or seed < 0:
        raise ParameterError(f"seed must be a nonnegative integer, got {seed!r}")
    return int(seed)


def child_rng(seed: int, *spawn_key: int) -> np.random.Generator:
    """Generator for the stream identified by (seed, spawn_key)."""
    return np.random.default_rng(np.random.SeedSequence(check_seed(seed), spawn_key=spawn_key))


def worker_rngs(seed: int, workers: int) -> list[np.random.Generator]:
    """Independent per-worker streams for a run seeded with `seed`."""
    if workers < 1:
        raise ParameterError(f"workers must be >= 1, got {workers}")
    return [child_rng(seed, w) for w in range(workers)]


def split_trials(total: int, workers: int) -> list[int]:
    """Partition `total` trials across workers; first `total % workers` get one extra."""
    if total < 0:
        raise ParameterError(f"trial count must be >= 0, got {total}")
    base, extra = divmod(total, workers)
    return [base + (1 if w < extra else 0) for w in range(workers)]
