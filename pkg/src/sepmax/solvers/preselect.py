"""Preselect-and-enumerate scheme for p-superseparable functions.

Keep the elements with the highest singleton values, then try every
K-subset of that pool. For a submodular p-superseparable v the best pool
subset is a beta-approximation of the optimum.
"""

from __future__ import annotations

import logging

from sepmax.config import ENUMERATION_BUDGET
from sepmax.exceptions import InvalidParamsError
from sepmax.models import SchemeParams, SolveMode, SolveResult
from sepmax.oracle import ValueOracle
from sepmax.solvers.base import best_k_subset, ceil_count, make_result, require_k

logger = logging.getLogger(__name__)


def pool_size(p: float, k: int, beta: float) -> int:
    """Return ceil(pK / (1 - beta) + K), before truncation to m."""
    if not 0 <= beta < 1:
        raise InvalidParamsError(f"beta must lie in [0, 1) for maximization, got {beta}")
    return ceil_count(p * k / (1.0 - beta) + k)


def top_singletons(oracle: ValueOracle, count: int) -> list[int]:
    """The *count* elements with the largest v({x}); ties go to the lower index."""
    singles = oracle.singleton_values()
    order = sorted(range(oracle.size), key=lambda x: (-singles[x], x))
    return sorted(order[:count])


def preselect_enumerate(
    oracle: ValueOracle,
    params: SchemeParams,
    *,
    budget: int = ENUMERATION_BUDGET,
) -> SolveResult:
    """Return the best K-subset of the top-singleton pool."""
    if params.p is None:
        raise InvalidParamsError("preselect_enumerate needs the superseparability parameter p")
    if params.beta is None:
        raise InvalidParamsError("preselect_enumerate needs beta")
    require_k(oracle, params.k)
    before = oracle.evaluations

    size = min(pool_size(params.p, params.k, params.beta), oracle.size)
    pool = top_singletons(oracle, size)
    logger.debug(
        "Pool of %d elements for K=%d, p=%g, beta=%g", size, params.k, params.p, params.beta
    )
    chosen = best_k_subset(oracle, pool, params.k, budget=budget)
    return make_result(
        oracle,
        "alg1",
        SolveMode.MAX,
        params.k,
        chosen,
        evaluations_before=before,
        guarantee=params.beta,
    )
