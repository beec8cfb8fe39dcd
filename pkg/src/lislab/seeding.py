"""Deterministic per-replica random streams.

Every Monte Carlo loop in the package derives one independent generator per
replica from ``(master_seed, stream, replica_index)``.  Results are then
functions of the seed and replica count alone: chunking, worker count, and
scheduling cannot change them.  Distinct ``stream`` ids keep independent
sample series (e.g. primary draws vs reference draws) from sharing bits.
"""

from __future__ import annotations

import numpy as np

__all__ = ["rng_for_replica", "replica_rngs"]


def rng_for_replica(
    master_seed: int, replica_index: int, stream: int = 0
) -> np.random.Generator:
    """Generator for one replica, independent of all other replicas."""
    ss = np.random.SeedSequence(master_seed, spawn_key=(stream, replica_index))
    return np.random.default_rng(ss)


def replica_rngs(
    master_seed: int, start: int, stop: int, stream: int = 0
) -> list[np.random.Generator]:
    """Generators for replicas ``start .. stop-1`` of one stream."""
    return [rng_for_replica(master_seed, i, stream) for i in range(start, stop)]
