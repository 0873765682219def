"""BestKSubset solvers: exact reference, preselection, greedy and randomized restarts."""

from __future__ import annotations

from sepmax.solvers.brute import brute_force, min_exact_size
from sepmax.solvers.greedy import greedy, greedy_guarantee, ptas, ptas_threshold
from sepmax.solvers.preselect import pool_size, preselect_enumerate, top_singletons
from sepmax.solvers.randomized import (
    best_subset_exact,
    exact_run_count,
    min_or_max,
    min_or_max_p,
    randomized_min,
    run_count,
    selection_distribution,
    single_run,
)
from sepmax.solvers.rng import run_stream

__all__ = [
    "best_subset_exact",
    "brute_force",
    "exact_run_count",
    "greedy",
    "greedy_guarantee",
    "min_exact_size",
    "min_or_max",
    "min_or_max_p",
    "pool_size",
    "preselect_enumerate",
    "ptas",
    "ptas_threshold",
    "randomized_min",
    "run_count",
    "run_stream",
    "selection_distribution",
    "single_run",
    "top_singletons",
]
