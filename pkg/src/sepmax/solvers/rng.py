"""Seeded random streams for the randomized solvers.

Every single run draws from its own numpy ``Generator`` backed by PCG64
(a 64-bit permuted congruential generator). The stream for run ``i`` is
seeded by ``SeedSequence([master_seed, *tags, i])``, i.e. a hash of the
master seed and the run coordinates, so runs can be reordered or spread
over workers without changing any run's outcome.
"""

from __future__ import annotations

import numpy as np

from sepmax.exceptions import InvalidParamsError

_SEED_LIMIT = 1 << 64


def check_seed(master_seed: int) -> int:
    if not 0 <= master_seed < _SEED_LIMIT:
        raise InvalidParamsError(f"seed must be an unsigned 64-bit integer, got {master_seed}")
    return master_seed


def run_stream(master_seed: int, run_index: int, *tags: int) -> np.random.Generator:
    """Return the generator for one run, independent of every other run."""
    check_seed(master_seed)
    sequence = np.random.SeedSequence([master_seed, *tags, run_index])
    return np.random.Generator(np.random.PCG64(sequence))
