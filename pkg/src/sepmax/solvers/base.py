"""Shared plumbing for the solvers: ceiling arithmetic, enumeration, results."""

from __future__ import annotations

import logging
import math
from collections.abc import Sequence
from itertools import combinations

from sepmax.config import CEIL_SLACK, ENUMERATION_BUDGET
from sepmax.exceptions import EnumerationBudgetError, InvalidParamsError
from sepmax.models import SolveMode, SolveResult
from sepmax.oracle import Subset, ValueOracle, members, values_close

logger = logging.getLogger(__name__)


def ceil_count(x: float) -> int:
    """Ceiling of a float count, ignoring float noise just above an integer."""
    if math.isinf(x):
        raise InvalidParamsError("count is unbounded")
    return max(0, math.ceil(x - CEIL_SLACK))


def require_k(oracle: ValueOracle, k: int, *, allow_above: bool = False) -> None:
    if k < 0:
        raise InvalidParamsError(f"K must be non-negative, got {k}")
    if not allow_above and k > oracle.size:
        raise InvalidParamsError(f"K={k} exceeds the ground set size {oracle.size}")


def best_k_subset(
    oracle: ValueOracle,
    candidates: Sequence[int],
    k: int,
    *,
    budget: int = ENUMERATION_BUDGET,
) -> Subset:
    """Return the k-subset of *candidates* with the highest value.

    Ties (within value tolerance) go to the numerically smallest bitmask.
    """
    k = min(k, len(candidates))
    required = math.comb(len(candidates), k)
    if required > budget:
        raise EnumerationBudgetError(required, budget)

    best_mask: Subset | None = None
    best_value = -math.inf
    for combo in combinations(candidates, k):
        mask = 0
        for x in combo:
            mask |= 1 << x
        value = oracle.evaluate(mask)
        if best_mask is None or value > best_value and not values_close(value, best_value):
            best_mask, best_value = mask, value
        elif values_close(value, best_value) and mask < best_mask:
            best_mask, best_value = mask, value
    assert best_mask is not None
    return best_mask


def make_result(
    oracle: ValueOracle,
    solver: str,
    mode: SolveMode,
    k: int,
    chosen: Subset,
    *,
    evaluations_before: int,
    guarantee: float | None = None,
    seed: int | None = None,
    runs: int = 0,
    found: bool | None = None,
) -> SolveResult:
    """Assemble a SolveResult whose value is re-read from the oracle."""
    value = oracle.evaluate(chosen)
    full = oracle.full_value()
    return SolveResult(
        solver=solver,
        mode=mode,
        k=k,
        chosen=members(chosen),
        value=value,
        residual=full - value,
        guarantee=guarantee,
        evaluations=oracle.evaluations - evaluations_before,
        seed=seed,
        runs=runs,
        found=found,
    )
