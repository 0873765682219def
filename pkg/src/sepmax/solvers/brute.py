"""Exhaustive BestKSubset solver, the exact reference for every other solver."""

from __future__ import annotations

import logging

from sepmax.config import ENUMERATION_BUDGET
from sepmax.models import SolveMode, SolveResult
from sepmax.oracle import ValueOracle, values_close
from sepmax.solvers.base import best_k_subset, make_result, require_k

logger = logging.getLogger(__name__)


def brute_force(
    oracle: ValueOracle,
    k: int,
    *,
    budget: int = ENUMERATION_BUDGET,
) -> SolveResult:
    """Return an optimal subset of size min(k, m).

    Only subsets of exactly that size are enumerated, which is optimal for
    non-decreasing set functions. Ties go to the smallest bitmask.
    """
    require_k(oracle, k, allow_above=True)
    before = oracle.evaluations
    chosen = best_k_subset(oracle, range(oracle.size), k, budget=budget)
    return make_result(
        oracle, "brute", SolveMode.MAX, k, chosen, evaluations_before=before, guarantee=1.0
    )


def min_exact_size(
    oracle: ValueOracle,
    *,
    budget: int = ENUMERATION_BUDGET,
) -> SolveResult:
    """Return a smallest subset S with v(S) = v(X), found by exhaustive search.

    Reference answer for the randomized best-subset solver.
    """
    before = oracle.evaluations
    full = oracle.full_value()
    for k in range(oracle.size + 1):
        chosen = best_k_subset(oracle, range(oracle.size), k, budget=budget)
        if values_close(oracle.evaluate(chosen), full):
            return make_result(
                oracle,
                "brute",
                SolveMode.EXACT,
                k,
                chosen,
                evaluations_before=before,
                guarantee=1.0,
                found=True,
            )
    # Unreachable: k = m always reaches v(X).
    raise AssertionError("full set must reach v(X)")
