"""Exhaustive and sampled checks of p-separability and submodular structure.

For a set function v over X and a state S, write
``M(S) = sum_x (v(S + x) - v(S))``. The three inequalities are

* superseparable:          M(S) >= sum_x v({x}) - p * v(S)
* at-least-subseparable:   M(S) >= p * (v(X) - v(S))
* at-most-subseparable:    M(S) <= p * (v(X) - v(S))

Exhaustive checks tabulate v over all 2^m subsets once and evaluate every
inequality with numpy; they refuse ground sets above the exhaustive limit.
"""

from __future__ import annotations

import logging
import math

import numpy as np
import numpy.typing as npt

from sepmax.config import EXHAUSTIVE_LIMIT, INEQUALITY_TOL
from sepmax.exceptions import ExhaustiveLimitError, InvalidParamsError
from sepmax.models import (
    SeparabilityKind,
    SeparabilityReport,
    StructuralReport,
    StructureReport,
    StructureWitness,
)
from sepmax.oracle import ValueOracle, members

logger = logging.getLogger(__name__)

FloatArray = npt.NDArray[np.float64]


# ---------------------------------------------------------------------------
# Tables
# ---------------------------------------------------------------------------


def _require_exhaustive(oracle: ValueOracle, limit: int) -> None:
    if oracle.size > limit:
        raise ExhaustiveLimitError(oracle.size, limit)


def value_table(oracle: ValueOracle) -> FloatArray:
    """Return v(S) for every bitmask S in 0 .. 2^m - 1."""
    return np.fromiter(
        (oracle.evaluate(mask) for mask in range(1 << oracle.size)),
        dtype=np.float64,
        count=1 << oracle.size,
    )


def marginal_sums(table: FloatArray, size: int) -> FloatArray:
    """Return M(S) for every S; members of S contribute exactly zero."""
    masks = np.arange(1 << size, dtype=np.int64)
    total = np.zeros_like(table)
    for x in range(size):
        total += table[masks | (1 << x)] - table
    return total


def _slack(*terms: FloatArray | float) -> FloatArray:
    scale = np.ones(1)
    for term in terms:
        scale = np.maximum(scale, np.abs(term))
    return INEQUALITY_TOL * scale


def _scaled(p: float, values: FloatArray) -> FloatArray:
    """p * values with 0 wherever values is 0, so p = inf never yields NaN."""
    with np.errstate(invalid="ignore"):
        return np.where(values == 0, 0.0, p * values)


def _violated(lhs: FloatArray, rhs: FloatArray) -> npt.NDArray[np.bool_]:
    """Mask of states where lhs >= rhs fails beyond the tolerance."""
    finite = np.isfinite(lhs) & np.isfinite(rhs)
    slack = _slack(np.where(finite, lhs, 0.0), np.where(finite, rhs, 0.0))
    return np.where(finite, lhs < rhs - slack, lhs < rhs)


def _sides(
    kind: SeparabilityKind,
    p: float,
    sums: FloatArray,
    values: FloatArray,
    singleton_total: float,
    full: float,
) -> tuple[FloatArray, FloatArray]:
    """Return (lhs, rhs) arrays such that the inequality reads lhs >= rhs."""
    if kind == SeparabilityKind.SUPERSEPARABLE:
        return sums, singleton_total - _scaled(p, values)
    if kind == SeparabilityKind.AT_LEAST_SUBSEPARABLE:
        return sums, _scaled(p, full - values)
    return _scaled(p, full - values), sums


# ---------------------------------------------------------------------------
# Structure
# ---------------------------------------------------------------------------


def check_structure(
    oracle: ValueOracle,
    *,
    limit: int = EXHAUSTIVE_LIMIT,
    sampled: int | None = None,
    seed: int = 0,
) -> StructureReport:
    """Check non-negativity, monotonicity and submodularity.

    Exhaustively, submodularity is checked through the equivalent local form
    v(S + x) + v(S + y) >= v(S + x + y) + v(S) for all S and x, y not in S,
    which reports the witness A = S, B = S + x, element y. With ``sampled``
    set and the ground set above *limit*, that many random triples
    (A subset of B, x outside B) are checked instead; the result is not a
    certificate.
    """
    if oracle.size > limit:
        if sampled is None:
            raise ExhaustiveLimitError(oracle.size, limit)
        return _sampled_structure(oracle, sampled, seed)

    m = oracle.size
    table = value_table(oracle)
    masks = np.arange(1 << m, dtype=np.int64)
    witnesses: dict[str, StructureWitness] = {}

    negative = np.flatnonzero(table < -_slack(table))
    if negative.size:
        witnesses["nonneg"] = StructureWitness(a=members(int(negative[0])))

    for x in range(m):
        if "monotone" in witnesses:
            break
        base = masks[(masks >> x) & 1 == 0]
        gain = table[base | (1 << x)] - table[base]
        bad = np.flatnonzero(gain < -_slack(table[base], table[base | (1 << x)]))
        if bad.size:
            s = int(base[bad[0]])
            witnesses["monotone"] = StructureWitness(a=members(s), b=members(s | (1 << x)))

    for x in range(m):
        if "submodular" in witnesses:
            break
        for y in range(x + 1, m):
            bx, by = 1 << x, 1 << y
            base = masks[(masks & (bx | by)) == 0]
            small = table[base | by] - table[base]
            large = table[base | bx | by] - table[base | bx]
            bad = np.flatnonzero(small < large - _slack(small, large, table[base | bx | by]))
            if bad.size:
                s = int(base[bad[0]])
                witnesses["submodular"] = StructureWitness(
                    a=members(s), b=members(s | bx), x=y
                )
                break

    return StructureReport(
        nonneg="nonneg" not in witnesses,
        monotone="monotone" not in witnesses,
        submodular="submodular" not in witnesses,
        witnesses=witnesses,
    )


def _sampled_structure(oracle: ValueOracle, trials: int, seed: int) -> StructureReport:
    logger.warning(
        "Ground set of size %d above exhaustive limit; sampling %d triples (not a certificate)",
        oracle.size,
        trials,
    )
    rng = np.random.default_rng(seed)
    m = oracle.size
    witnesses: dict[str, StructureWitness] = {}
    for _ in range(trials):
        in_b = rng.random(m) < rng.random()
        outside = np.flatnonzero(~in_b)
        if outside.size == 0:
            continue
        in_a = in_b & (rng.random(m) < 0.5)
        b = int(sum(1 << int(i) for i in np.flatnonzero(in_b)))
        a = int(sum(1 << int(i) for i in np.flatnonzero(in_a)))
        x = int(rng.choice(outside))
        va, vb = oracle.evaluate(a), oracle.evaluate(b)
        tol = INEQUALITY_TOL * max(1.0, abs(va), abs(vb))
        if "nonneg" not in witnesses and min(va, vb) < -tol:
            witnesses["nonneg"] = StructureWitness(a=members(a if va < vb else b))
        if "monotone" not in witnesses and vb < va - tol:
            witnesses["monotone"] = StructureWitness(a=members(a), b=members(b))
        if "submodular" not in witnesses:
            small, large = oracle.marginal(a, x), oracle.marginal(b, x)
            if small < large - INEQUALITY_TOL * max(1.0, abs(small), abs(large)):
                witnesses["submodular"] = StructureWitness(a=members(a), b=members(b), x=x)
    return StructureReport(
        nonneg="nonneg" not in witnesses,
        monotone="monotone" not in witnesses,
        submodular="submodular" not in witnesses,
        witnesses=witnesses,
        sampled=True,
        trials=trials,
    )


# ---------------------------------------------------------------------------
# Separability
# ---------------------------------------------------------------------------


def verify(
    oracle: ValueOracle,
    kind: SeparabilityKind,
    p: float,
    *,
    limit: int = EXHAUSTIVE_LIMIT,
    sampled: int | None = None,
    seed: int = 0,
) -> SeparabilityReport:
    """Check the *kind* inequality at *p* for every S (or for sampled S).

    The report's witness is the smallest bitmask violating the inequality by
    more than the tolerance. ``extremal_p`` is filled in as well.
    """
    if p < 0 or math.isnan(p):
        raise InvalidParamsError(f"p must be non-negative, got {p}")
    if oracle.size > limit:
        if sampled is None:
            raise ExhaustiveLimitError(oracle.size, limit)
        return _sampled_verify(oracle, kind, p, sampled, seed)

    table = value_table(oracle)
    sums = marginal_sums(table, oracle.size)
    singleton_total = oracle.singleton_sum()
    full = float(table[-1])
    lhs, rhs = _sides(kind, p, sums, table, singleton_total, full)
    bad = np.flatnonzero(_violated(lhs, rhs))
    extremal = _extremal(kind, sums, table, singleton_total, full)

    if bad.size:
        s = int(bad[0])
        logger.debug("%s fails at p=%g with witness %s", kind, p, members(s))
        return SeparabilityReport(
            kind=kind,
            p_tested=p,
            holds=False,
            witness=members(s),
            violation=float(rhs[s] - lhs[s]),
            extremal_p=extremal,
        )
    return SeparabilityReport(kind=kind, p_tested=p, holds=True, extremal_p=extremal)


def _sampled_verify(
    oracle: ValueOracle,
    kind: SeparabilityKind,
    p: float,
    trials: int,
    seed: int,
) -> SeparabilityReport:
    logger.warning(
        "Ground set of size %d above exhaustive limit; sampling %d states (not a certificate)",
        oracle.size,
        trials,
    )
    rng = np.random.default_rng(seed)
    m = oracle.size
    states = [0, oracle.ground.full_mask]
    for _ in range(trials):
        chosen = np.flatnonzero(rng.random(m) < rng.random())
        states.append(int(sum(1 << int(i) for i in chosen)))
    unique = sorted(set(states))

    values = np.array([oracle.evaluate(s) for s in unique])
    sums = np.array([sum(oracle.marginal(s, x) for x in range(m)) for s in unique])
    singleton_total = oracle.singleton_sum()
    full = oracle.full_value()
    lhs, rhs = _sides(kind, p, sums, values, singleton_total, full)
    bad = np.flatnonzero(_violated(lhs, rhs))
    extremal = _extremal(kind, sums, values, singleton_total, full)
    if bad.size:
        i = int(bad[0])
        return SeparabilityReport(
            kind=kind,
            p_tested=p,
            holds=False,
            witness=members(unique[i]),
            violation=float(rhs[i] - lhs[i]),
            extremal_p=extremal,
            sampled=True,
            trials=trials,
        )
    return SeparabilityReport(
        kind=kind, p_tested=p, holds=True, extremal_p=extremal, sampled=True, trials=trials
    )


def _extremal(
    kind: SeparabilityKind,
    sums: FloatArray,
    values: FloatArray,
    singleton_total: float,
    full: float,
) -> float:
    if kind == SeparabilityKind.SUPERSEPARABLE:
        positive = values > _slack(values)
        deficit = singleton_total - sums
        degenerate = ~positive & (deficit > _slack(sums, singleton_total))
        if degenerate.any():
            return math.inf
        if not positive.any():
            return 0.0
        return max(0.0, float(np.max(deficit[positive] / values[positive])))

    gap = full - values
    open_states = gap > _slack(full, values)
    if kind == SeparabilityKind.AT_MOST_SUBSEPARABLE:
        if (sums[~open_states] > _slack(sums[~open_states])).any():
            return math.inf
        if not open_states.any():
            return 0.0
        return max(0.0, float(np.max(sums[open_states] / gap[open_states])))

    if not open_states.any():
        return math.inf
    return max(0.0, float(np.min(sums[open_states] / gap[open_states])))


def extremal_p(
    oracle: ValueOracle,
    kind: SeparabilityKind,
    *,
    limit: int = EXHAUSTIVE_LIMIT,
) -> float:
    """Return the tightest p for which *kind* holds.

    Smallest p for the superseparable and at-most inequalities, largest p
    for at-least. ``math.inf`` when no finite p works (superseparable,
    at-most) or every p works (at-least).
    """
    _require_exhaustive(oracle, limit)
    table = value_table(oracle)
    sums = marginal_sums(table, oracle.size)
    return _extremal(kind, sums, table, oracle.singleton_sum(), float(table[-1]))


def certify(
    oracle: ValueOracle,
    structural: StructuralReport,
    *,
    limit: int = EXHAUSTIVE_LIMIT,
) -> dict[SeparabilityKind, SeparabilityReport]:
    """Run :func:`verify` for every parameter *structural* reports."""
    reports: dict[SeparabilityKind, SeparabilityReport] = {}
    for kind in SeparabilityKind:
        p = structural.parameter(kind)
        if p is not None:
            reports[kind] = verify(oracle, kind, p, limit=limit)
    return reports
