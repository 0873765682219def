"""Randomized restart solvers for at-most-p-subseparable functions.

A single run grows S over K steps, drawing each new element with
probability proportional to its marginal gain. Repeating the run enough
times finds, with probability at least 1 - epsilon, a subset whose residual
v(X) - v(S) is within beta of the optimal residual. The same restart loop
powers the minimization-or-maximization variant and the exact search for a
smallest S with v(S) = v(X).
"""

from __future__ import annotations

import logging
import math
from collections.abc import Iterable
from concurrent.futures import ThreadPoolExecutor

import numpy as np
import numpy.typing as npt

from sepmax.config import INEQUALITY_TOL, RUN_BUDGET
from sepmax.exceptions import DegenerateInstanceError, InvalidParamsError, RunBudgetError
from sepmax.models import SchemeParams, SolveMode, SolveResult
from sepmax.oracle import Subset, ValueOracle, values_close
from sepmax.solvers.base import ceil_count, make_result, require_k
from sepmax.solvers.rng import check_seed, run_stream

logger = logging.getLogger(__name__)


# ---------------------------------------------------------------------------
# Single run
# ---------------------------------------------------------------------------


def selection_distribution(
    oracle: ValueOracle, mask: Subset
) -> tuple[list[int], npt.NDArray[np.float64]]:
    """Return the candidates outside *mask* and their selection probabilities.

    Probabilities are proportional to the marginal gains (negative noise is
    clipped to zero). When every gain is zero the probability vector is all
    zeros.
    """
    current = oracle.evaluate(mask)
    candidates = [x for x in range(oracle.size) if not mask >> x & 1]
    gains = np.array(
        [oracle.evaluate(mask | (1 << x)) - current for x in candidates], dtype=np.float64
    )
    gains = np.clip(gains, 0.0, None)
    total = float(gains.sum())
    if total <= INEQUALITY_TOL * max(1.0, abs(current)):
        return candidates, np.zeros_like(gains)
    return candidates, gains / total


def single_run(oracle: ValueOracle, k: int, rng: np.random.Generator) -> Subset:
    """Grow a k-element subset by marginal-proportional sampling.

    If every remaining gain is zero the run stops and pads S with uniformly
    random unused elements; for a monotone submodular v this cannot lower
    the value.
    """
    require_k(oracle, k)
    mask: Subset = 0
    for step in range(k):
        candidates, probs = selection_distribution(oracle, mask)
        if not probs.any():
            fill = rng.choice(np.array(candidates), size=k - step, replace=False)
            for x in fill:
                mask |= 1 << int(x)
            break
        cumulative = np.cumsum(probs)
        pick = int(np.searchsorted(cumulative, rng.random() * cumulative[-1], side="right"))
        mask |= 1 << candidates[min(pick, len(candidates) - 1)]
    return mask


# ---------------------------------------------------------------------------
# Restart loop
# ---------------------------------------------------------------------------


def run_count(p: float, beta: float, k: int, epsilon: float) -> float:
    """Restarts needed for the minimization guarantee: ceil(-ln eps * (p beta / (beta - 1))^K).

    Returned as a float so callers can report astronomically large counts.
    """
    if beta <= 1:
        raise InvalidParamsError(f"beta must exceed 1 for minimization, got {beta}")
    if p <= 0:
        raise InvalidParamsError(f"p must be positive, got {p}")
    if not 0 < epsilon < 1:
        raise InvalidParamsError(f"epsilon must lie in (0, 1), got {epsilon}")
    try:
        raw = -math.log(epsilon) * (p * beta / (beta - 1.0)) ** k
    except OverflowError:
        return math.inf
    return math.inf if math.isinf(raw) else float(ceil_count(raw))


def exact_run_count(p: float, k: int, epsilon: float) -> float:
    """Restarts per level of the exact search: ceil(-ln eps * p^K)."""
    if p <= 0:
        raise InvalidParamsError(f"p must be positive, got {p}")
    if not 0 < epsilon < 1:
        raise InvalidParamsError(f"epsilon must lie in (0, 1), got {epsilon}")
    try:
        raw = -math.log(epsilon) * p**k
    except OverflowError:
        return math.inf
    return math.inf if math.isinf(raw) else float(ceil_count(raw))


def _checked_runs(required: float, budget: int) -> int:
    if required > budget:
        raise RunBudgetError(required, budget)
    return int(required)


def _best_of_runs(
    oracle: ValueOracle,
    k: int,
    runs: int,
    master_seed: int,
    tags: tuple[int, ...] = (),
    workers: int = 1,
) -> tuple[Subset, float]:
    """Run *runs* independent single runs and keep the best.

    Ties go to the lowest run index, so the outcome does not depend on
    scheduling.
    """

    def _one(index: int) -> tuple[Subset, float]:
        mask = single_run(oracle, k, run_stream(master_seed, index, *tags))
        return mask, oracle.evaluate(mask)

    outcomes: Iterable[tuple[Subset, float]]
    if workers > 1 and runs > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            outcomes = list(pool.map(_one, range(runs)))
    else:
        outcomes = map(_one, range(runs))

    best_mask, best_value = 0, -math.inf
    for mask, value in outcomes:
        if value > best_value and not values_close(value, best_value):
            best_mask, best_value = mask, value
    return best_mask, best_value


# ---------------------------------------------------------------------------
# Solvers
# ---------------------------------------------------------------------------


def randomized_min(
    oracle: ValueOracle,
    params: SchemeParams,
    master_seed: int,
    *,
    run_budget: int = RUN_BUDGET,
    workers: int = 1,
) -> SolveResult:
    """Best of R single runs; residual <= beta * optimal residual w.p. >= 1 - epsilon."""
    if params.p is None:
        raise InvalidParamsError("randomized_min needs the at-most-subseparability parameter p")
    if params.beta is None:
        raise InvalidParamsError("randomized_min needs beta")
    require_k(oracle, params.k)
    check_seed(master_seed)
    runs = _checked_runs(run_count(params.p, params.beta, params.k, params.epsilon), run_budget)
    logger.debug("Running %d single runs for K=%d, p=%g", runs, params.k, params.p)

    before = oracle.evaluations
    chosen, _ = _best_of_runs(oracle, params.k, runs, master_seed, workers=workers)
    return make_result(
        oracle,
        "alg3-min",
        SolveMode.MIN,
        params.k,
        chosen,
        evaluations_before=before,
        guarantee=params.beta,
        seed=master_seed,
        runs=runs,
    )


def min_or_max_p(oracle: ValueOracle, beta: float) -> float:
    """Return (beta / (beta - 1)) * sum_x v({x}) / v(X)."""
    if beta <= 1:
        raise InvalidParamsError(f"beta must exceed 1, got {beta}")
    full = oracle.full_value()
    if values_close(full, 0.0):
        raise DegenerateInstanceError("v(X) = 0: every subset is optimal")
    return beta / (beta - 1.0) * oracle.singleton_sum() / full


def min_or_max(
    oracle: ValueOracle,
    k: int,
    beta: float,
    epsilon: float,
    master_seed: int,
    *,
    run_budget: int = RUN_BUDGET,
    workers: int = 1,
) -> SolveResult:
    """Randomized restarts with p derived from the singleton-sum ratio.

    With probability >= 1 - epsilon the result satisfies v(S) >= OPT / beta
    or residual <= beta * optimal residual. When v(X) = 0 the empty set is
    returned without any runs.
    """
    require_k(oracle, k)
    check_seed(master_seed)
    before = oracle.evaluations
    if values_close(oracle.full_value(), 0.0):
        logger.warning("v(X) = 0; returning the empty set")
        return make_result(
            oracle,
            "min-or-max",
            SolveMode.MIN_OR_MAX,
            k,
            0,
            evaluations_before=before,
            guarantee=beta,
            seed=master_seed,
        )
    p = min_or_max_p(oracle, beta)
    logger.debug("min-or-max parameter p=%g", p)
    result = randomized_min(
        oracle,
        SchemeParams(k=k, beta=beta, epsilon=epsilon, p=p),
        master_seed,
        run_budget=run_budget,
        workers=workers,
    )
    return result.model_copy(
        update={
            "solver": "min-or-max",
            "mode": SolveMode.MIN_OR_MAX,
            "evaluations": oracle.evaluations - before,
        }
    )


def best_subset_exact(
    oracle: ValueOracle,
    epsilon: float,
    master_seed: int,
    k_max: int,
    p: float,
    *,
    run_budget: int = RUN_BUDGET,
    workers: int = 1,
) -> SolveResult:
    """Search K = 1, 2, ... for a subset with v(S) = v(X).

    Each level performs ceil(-ln eps * p^K) single runs. The first level
    that reaches v(X) wins (``found=True``). If no level up to *k_max*
    succeeds, the result carries ``found=False`` and the best subset seen.
    """
    if k_max < 1:
        raise InvalidParamsError(f"K_max must be at least 1, got {k_max}")
    require_k(oracle, k_max)
    check_seed(master_seed)
    before = oracle.evaluations
    full = oracle.full_value()

    total_runs = 0
    best_mask, best_value, best_k = 0, -math.inf, 1
    for k in range(1, k_max + 1):
        runs = _checked_runs(exact_run_count(p, k, epsilon), run_budget - total_runs)
        mask, value = _best_of_runs(oracle, k, runs, master_seed, tags=(k,), workers=workers)
        total_runs += runs
        if values_close(value, full):
            logger.debug("Reached v(X) at K=%d after %d runs", k, total_runs)
            return make_result(
                oracle,
                "best-subset",
                SolveMode.EXACT,
                k,
                mask,
                evaluations_before=before,
                seed=master_seed,
                runs=total_runs,
                found=True,
            )
        if value > best_value and not values_close(value, best_value):
            best_mask, best_value, best_k = mask, value, k

    logger.info("No K <= %d reached v(X); best residual %g", k_max, full - best_value)
    return make_result(
        oracle,
        "best-subset",
        SolveMode.EXACT,
        best_k,
        best_mask,
        evaluations_before=before,
        seed=master_seed,
        runs=total_runs,
        found=False,
    )
