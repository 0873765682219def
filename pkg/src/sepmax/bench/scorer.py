"""Bound checks and per-solver aggregation for campaign rows."""

from __future__ import annotations

import math
from collections import defaultdict

from sepmax.bench.models import BenchRow, SolverSummary
from sepmax.config import INEQUALITY_TOL
from sepmax.models import SolveMode

# Rows from these modes are statistical; a share of failures up to the
# failure-probability bound plus three binomial standard deviations is allowed.
RANDOMIZED_MODES = frozenset({SolveMode.MIN, SolveMode.MIN_OR_MAX, SolveMode.EXACT})


def _at_least(lhs: float, rhs: float) -> bool:
    return lhs >= rhs - INEQUALITY_TOL * max(1.0, abs(lhs), abs(rhs))


def value_ratio(value: float, optimum: float) -> float:
    """value / optimum, with 0 / 0 read as a perfect ratio."""
    if optimum <= 0:
        return 1.0
    return value / optimum


def bound_satisfied(
    mode: SolveMode,
    *,
    value: float,
    full: float,
    optimum: float,
    guarantee: float | None,
    found: bool | None = None,
    k: int | None = None,
    min_size: int | None = None,
) -> bool | None:
    """Apply the success predicate of *mode*; ``None`` when no guarantee applies.

    For ``EXACT`` rows *optimum* is v(X) and *min_size* the smallest size
    reaching it.
    """
    if mode == SolveMode.EXACT:
        if min_size is None:
            return None
        return bool(found) and k == min_size
    if guarantee is None:
        return None
    residual = full - value
    optimal_residual = full - optimum
    if mode == SolveMode.MAX:
        return _at_least(value, guarantee * optimum)
    if mode == SolveMode.MIN:
        return _at_least(guarantee * optimal_residual, residual)
    # MIN_OR_MAX: either the value or the residual target suffices.
    return _at_least(value, optimum / guarantee) or _at_least(
        guarantee * optimal_residual, residual
    )


def allowed_failure_rate(epsilon: float, trials: int) -> float:
    """epsilon + 3 * sqrt(epsilon * (1 - epsilon) / trials)."""
    if trials <= 0:
        return epsilon
    return epsilon + 3.0 * math.sqrt(epsilon * (1.0 - epsilon) / trials)


def summarize(rows: list[BenchRow]) -> list[SolverSummary]:
    """One summary per solver label, in label order."""
    groups: dict[str, list[BenchRow]] = defaultdict(list)
    for row in rows:
        groups[row.label].append(row)

    summaries: list[SolverSummary] = []
    for label in sorted(groups):
        group = groups[label]
        ok_rows = [r for r in group if r.error is None]
        ratios = [r.ratio for r in ok_rows if r.ratio is not None]
        checked = [r for r in ok_rows if r.bound_ok is not None]
        failures = sum(1 for r in checked if not r.bound_ok)

        failure_rate = failures / len(checked) if checked else None
        allowed: float | None = None
        if checked:
            if any(r.mode in RANDOMIZED_MODES for r in checked):
                epsilon = max(float(r.params.get("epsilon", 0.0)) for r in checked)
                allowed = allowed_failure_rate(epsilon, len(checked))
            else:
                allowed = 0.0

        summaries.append(
            SolverSummary(
                label=label,
                rows=len(group),
                errors=len(group) - len(ok_rows),
                worst_ratio=min(ratios) if ratios else None,
                mean_ratio=math.fsum(ratios) / len(ratios) if ratios else None,
                checked=len(checked),
                failures=failures,
                failure_rate=failure_rate,
                allowed_failure_rate=allowed,
                within_bound=(
                    None if failure_rate is None or allowed is None else failure_rate <= allowed
                ),
            )
        )
    return summaries
