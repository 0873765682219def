"""Solver registry and instance-to-report dispatch."""

from __future__ import annotations

import logging
from collections.abc import Callable
from typing import NamedTuple

from pydantic import ValidationError

from sepmax.config import RECERTIFY_LIMIT
from sepmax.exceptions import DegenerateInstanceError, InvalidParamsError
from sepmax.harness.models import InstanceFile, InstanceKind, SolveReport, SolveRequest
from sepmax.models import (
    SchemeParams,
    SeparabilityKind,
    SeparabilityReport,
    SolveResult,
    StructuralReport,
)
from sepmax.oracle import ValueOracle
from sepmax.problems.bmatching import bmatching_oracle
from sepmax.problems.cover import cover_oracle
from sepmax.problems.models import BMatchingInstance, CoverInstance, OwaInstance
from sepmax.problems.owa import owa_oracle
from sepmax.separability import verify
from sepmax.solvers import (
    best_subset_exact,
    brute_force,
    greedy,
    min_or_max,
    min_or_max_p,
    preselect_enumerate,
    ptas,
    randomized_min,
)

logger = logging.getLogger(__name__)

DEFAULT_MAX_BETA = 0.5
DEFAULT_MIN_BETA = 2.0


class Dispatched(NamedTuple):
    result: SolveResult
    p_used: float | None


SolverFn = Callable[[ValueOracle, StructuralReport, SolveRequest], Dispatched]


def build_oracle(instance: InstanceFile, k: int = 0) -> tuple[ValueOracle, StructuralReport]:
    """Build the value oracle and structural report for *instance*.

    OWA oracles depend on the committee size: *k* when positive, otherwise
    the full OWA vector length. A *k* above that length is rejected.
    """
    payload = instance.payload
    if isinstance(payload, CoverInstance):
        return cover_oracle(payload)
    if isinstance(payload, OwaInstance):
        return owa_oracle(payload, k if k >= 1 else None)
    if isinstance(payload, BMatchingInstance):
        return bmatching_oracle(payload)
    raise InvalidParamsError(f"unsupported instance kind {instance.kind}")


def _scheme(request: SolveRequest, beta: float | None, p: float | None) -> SchemeParams:
    try:
        return SchemeParams(k=request.k, beta=beta, epsilon=request.epsilon, p=p)
    except ValidationError as exc:
        raise InvalidParamsError(f"invalid solver parameters: {exc}") from exc


def _require_p(value: float | None, kind: SeparabilityKind, solver: str) -> float:
    if value is None or value <= 0:
        raise InvalidParamsError(
            f"solver {solver!r} needs a positive {kind} parameter; pass --p to supply one"
        )
    return value


def _run_brute(oracle: ValueOracle, _: StructuralReport, request: SolveRequest) -> Dispatched:
    return Dispatched(brute_force(oracle, request.k, budget=request.budgets.enumeration), None)


def _run_alg1(
    oracle: ValueOracle, structural: StructuralReport, request: SolveRequest
) -> Dispatched:
    p = _require_p(
        request.p if request.p is not None else structural.super_p,
        SeparabilityKind.SUPERSEPARABLE,
        request.solver,
    )
    beta = DEFAULT_MAX_BETA if request.beta is None else request.beta
    result = preselect_enumerate(
        oracle, _scheme(request, beta, p), budget=request.budgets.enumeration
    )
    return Dispatched(result, p)


def _run_greedy(
    oracle: ValueOracle, structural: StructuralReport, request: SolveRequest
) -> Dispatched:
    p = request.p if request.p is not None else structural.at_least_p
    if p is not None and p <= 0:
        p = None
    result = greedy(oracle, request.k, p=p, submodular=structural.certified)
    return Dispatched(result, p)


def _run_ptas(
    oracle: ValueOracle, structural: StructuralReport, request: SolveRequest
) -> Dispatched:
    gamma = request.gamma
    if gamma is None:
        p = _require_p(
            request.p if request.p is not None else structural.at_least_p,
            SeparabilityKind.AT_LEAST_SUBSEPARABLE,
            request.solver,
        )
        gamma = p / oracle.size
    result = ptas(
        oracle, request.k, gamma, request.epsilon_ratio, budget=request.budgets.enumeration
    )
    return Dispatched(result, gamma * oracle.size)


def _run_alg3(
    oracle: ValueOracle, structural: StructuralReport, request: SolveRequest
) -> Dispatched:
    p = _require_p(
        request.p if request.p is not None else structural.at_most_p,
        SeparabilityKind.AT_MOST_SUBSEPARABLE,
        request.solver,
    )
    beta = DEFAULT_MIN_BETA if request.beta is None else request.beta
    if beta <= 1:
        raise InvalidParamsError(f"beta must exceed 1 for minimization, got {beta}")
    result = randomized_min(
        oracle,
        _scheme(request, beta, p),
        request.seed,
        run_budget=request.budgets.runs,
        workers=request.workers,
    )
    return Dispatched(result, p)


def _run_min_or_max(
    oracle: ValueOracle, _: StructuralReport, request: SolveRequest
) -> Dispatched:
    beta = DEFAULT_MIN_BETA if request.beta is None else request.beta
    result = min_or_max(
        oracle,
        request.k,
        beta,
        request.epsilon,
        request.seed,
        run_budget=request.budgets.runs,
        workers=request.workers,
    )
    # min_or_max already counted the evaluations behind p.
    try:
        p: float | None = min_or_max_p(oracle, beta)
    except DegenerateInstanceError:
        p = None
    return Dispatched(result, p)


def _run_best_subset(
    oracle: ValueOracle, structural: StructuralReport, request: SolveRequest
) -> Dispatched:
    p = _require_p(
        request.p if request.p is not None else structural.at_most_p,
        SeparabilityKind.AT_MOST_SUBSEPARABLE,
        request.solver,
    )
    k_max = oracle.size if request.k_max is None else request.k_max
    result = best_subset_exact(
        oracle,
        request.epsilon,
        request.seed,
        k_max,
        p,
        run_budget=request.budgets.runs,
        workers=request.workers,
    )
    return Dispatched(result, p)


SOLVERS: dict[str, SolverFn] = {
    "brute": _run_brute,
    "alg1": _run_alg1,
    "greedy": _run_greedy,
    "ptas": _run_ptas,
    "alg3-min": _run_alg3,
    "min-or-max": _run_min_or_max,
    "best-subset": _run_best_subset,
}


def recertify(
    instance: InstanceFile, k: int = 0, limit: int = RECERTIFY_LIMIT
) -> dict[SeparabilityKind, SeparabilityReport]:
    """Check every declared p on a fresh oracle; empty when the ground set exceeds *limit*."""
    limit = min(limit, RECERTIFY_LIMIT)
    if not instance.declared_p or instance.ground_size > limit:
        return {}
    oracle, _ = build_oracle(instance, k)
    reports: dict[SeparabilityKind, SeparabilityReport] = {}
    for kind, p in sorted(instance.declared_p.items()):
        report = verify(oracle, kind, p, limit=limit)
        if not report.holds:
            logger.warning(
                "Instance %s declares %s p=%g but witness %s violates it",
                instance.id,
                kind,
                p,
                report.witness,
            )
        reports[kind] = report
    return reports


def solve(instance: InstanceFile, request: SolveRequest) -> SolveReport:
    """Run *request* against *instance* and assemble the full report."""
    oracle, structural = build_oracle(instance, request.k)
    logger.debug(
        "Solving %s (%s, m=%d) with %s", instance.id, instance.kind, oracle.size, request.solver
    )
    dispatched = SOLVERS[request.solver](oracle, structural, request)
    result = dispatched.result

    labels = None
    if oracle.ground.labels is not None:
        labels = [oracle.ground.label(x) for x in result.chosen]

    return SolveReport(
        instance_id=instance.id,
        instance_kind=InstanceKind(instance.kind),
        solver=request.solver,
        params=request.echo(),
        p_used=dispatched.p_used,
        structural=structural,
        declared_p=instance.declared_p,
        certification=recertify(instance, request.k, request.budgets.exhaustive_limit),
        result=result,
        chosen_labels=labels,
    )
