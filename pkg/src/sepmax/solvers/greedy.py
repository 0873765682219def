"""Greedy BestKSubset solver and the PTAS built on it."""

from __future__ import annotations

import logging
import math

from sepmax.config import ENUMERATION_BUDGET
from sepmax.exceptions import InvalidParamsError
from sepmax.models import SolveMode, SolveResult
from sepmax.oracle import ValueOracle
from sepmax.solvers.base import ceil_count, make_result, require_k
from sepmax.solvers.brute import brute_force

logger = logging.getLogger(__name__)

_SUBMODULAR_RATIO = 1.0 - math.exp(-1.0)


def greedy_guarantee(m: int, k: int, p: float | None, submodular: bool) -> float | None:
    """Approximation ratio the greedy result is certified for.

    With an at-least-p-subseparable certificate the ratio is
    1 - exp(-pK/m); if the function is also submodular the classical
    1 - 1/e applies too and the larger of the two is reported.
    """
    ratios: list[float] = []
    if p is not None:
        ratios.append(1.0 - math.exp(-p * k / m))
    if submodular:
        ratios.append(_SUBMODULAR_RATIO)
    return max(ratios) if ratios else None


def greedy(
    oracle: ValueOracle,
    k: int,
    *,
    p: float | None = None,
    submodular: bool = False,
) -> SolveResult:
    """Add the element with the largest marginal gain, k times.

    Ties go to the lowest element index.
    """
    require_k(oracle, k)
    if p is not None and p <= 0:
        raise InvalidParamsError(f"p must be positive, got {p}")
    before = oracle.evaluations

    chosen = 0
    current = oracle.evaluate(0)
    for _ in range(k):
        best_x = -1
        best_gain = -math.inf
        for x in range(oracle.size):
            if chosen >> x & 1:
                continue
            gain = oracle.evaluate(chosen | (1 << x)) - current
            if gain > best_gain:
                best_x, best_gain = x, gain
        chosen |= 1 << best_x
        current = oracle.evaluate(chosen)

    return make_result(
        oracle,
        "greedy",
        SolveMode.MAX,
        k,
        chosen,
        evaluations_before=before,
        guarantee=greedy_guarantee(oracle.size, k, p, submodular),
    )


def ptas_threshold(gamma: float, epsilon_ratio: float) -> int:
    """Smallest c with 1 - exp(-gamma * K) >= 1 - epsilon_ratio for every K > c."""
    if gamma <= 0:
        raise InvalidParamsError(f"gamma must be positive, got {gamma}")
    if not 0 < epsilon_ratio < 1:
        raise InvalidParamsError(f"epsilon_ratio must lie in (0, 1), got {epsilon_ratio}")
    return ceil_count(math.log(1.0 / epsilon_ratio) / gamma)


def ptas(
    oracle: ValueOracle,
    k: int,
    gamma: float,
    epsilon_ratio: float,
    *,
    budget: int = ENUMERATION_BUDGET,
) -> SolveResult:
    """(1 - epsilon_ratio)-approximation for at-least-(gamma * m)-subseparable functions.

    Small K is solved exactly by enumeration; above the threshold the greedy
    ratio already meets the target.
    """
    require_k(oracle, k, allow_above=True)
    c = ptas_threshold(gamma, epsilon_ratio)
    logger.debug("PTAS threshold c=%d for gamma=%g, epsilon=%g", c, gamma, epsilon_ratio)
    if k <= c:
        result = brute_force(oracle, k, budget=budget)
    else:
        result = greedy(oracle, k, p=gamma * oracle.size, submodular=True)
    return result.model_copy(update={"solver": "ptas", "guarantee": 1.0 - epsilon_ratio})
