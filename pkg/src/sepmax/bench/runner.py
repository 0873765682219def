"""Campaign runner: generate instances, run every solver row, score against brute force."""

from __future__ import annotations

import logging
import threading
import time
from concurrent.futures import ThreadPoolExecutor, as_completed
from dataclasses import dataclass
from typing import Any

from sepmax.bench.models import BenchReport, BenchRow, CampaignSpec, SolverSpec
from sepmax.bench.scorer import bound_satisfied, summarize, value_ratio
from sepmax.exceptions import SepmaxError
from sepmax.harness.dispatch import build_oracle, solve
from sepmax.harness.generator import generate
from sepmax.harness.models import InstanceFile, InstanceKind, SolveRequest
from sepmax.models import SolveMode
from sepmax.solvers import brute_force, min_exact_size

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Reference:
    """Exact answers for one (instance, K): optimum of size K, v(X), smallest exact size."""

    optimum: float | None
    full: float
    min_size: int | None


@dataclass
class RowTask:
    entry: int
    solver_index: int
    instance_seed: int
    instance_kind: InstanceKind
    generator_params: dict[str, Any]
    spec: SolverSpec
    request: SolveRequest
    instance: InstanceFile | None
    instance_error: str | None = None


class ReferenceCache:
    """Memoized brute-force references, shared by every row of a campaign."""

    def __init__(self, exact_cap: int) -> None:
        self.exact_cap = exact_cap
        self._refs: dict[tuple[str, int, bool], Reference | None] = {}
        self._lock = threading.Lock()

    def get(self, instance: InstanceFile, k: int, exact: bool) -> Reference | None:
        if instance.ground_size > self.exact_cap:
            return None
        key = (instance.id, k, exact)
        with self._lock:
            if key in self._refs:
                return self._refs[key]
        ref = self._compute(instance, k, exact)
        with self._lock:
            return self._refs.setdefault(key, ref)

    @staticmethod
    def _compute(instance: InstanceFile, k: int, exact: bool) -> Reference | None:
        oracle, _ = build_oracle(instance, k)
        try:
            if exact:
                smallest = min_exact_size(oracle)
                return Reference(optimum=None, full=oracle.full_value(), min_size=smallest.k)
            best = brute_force(oracle, k)
            return Reference(optimum=best.value, full=oracle.full_value(), min_size=None)
        except SepmaxError as exc:
            logger.warning("No exact reference for %s (K=%d): %s", instance.id, k, exc)
            return None


def _base_row(task: RowTask, instance_id: str) -> dict[str, Any]:
    return {
        "entry": task.entry,
        "solver_index": task.solver_index,
        "instance_id": instance_id,
        "instance_kind": task.instance_kind,
        "instance_seed": task.instance_seed,
        "generator_params": task.generator_params,
        "solver": task.spec.solver,
        "label": task.spec.name,
        "params": task.request.echo(),
        "seed": task.request.seed,
    }


def run_row(task: RowTask, references: ReferenceCache) -> BenchRow:
    """Run one row; failures become an ``error`` entry instead of propagating."""
    if task.instance is None:
        return BenchRow(
            **_base_row(task, f"{task.instance_kind}-s{task.instance_seed}"),
            error=task.instance_error,
        )
    instance = task.instance
    base = _base_row(task, instance.id)
    start = time.perf_counter()
    try:
        report = solve(instance, task.request)
    except Exception as exc:  # noqa: BLE001
        logger.error(
            "Row %s / %s seed %d failed: %s", instance.id, task.spec.name, task.request.seed, exc
        )
        return BenchRow(**base, wall_time=time.perf_counter() - start, error=str(exc))
    wall_time = time.perf_counter() - start

    result = report.result
    exact = result.mode == SolveMode.EXACT
    ref = references.get(instance, task.request.k, exact)
    optimum = None if ref is None else (ref.full if exact else ref.optimum)
    ratio: float | None = None
    bound_ok: bool | None = None
    if ref is not None and optimum is not None:
        ratio = value_ratio(result.value, optimum)
        bound_ok = bound_satisfied(
            result.mode,
            value=result.value,
            full=ref.full,
            optimum=optimum,
            guarantee=result.guarantee,
            found=result.found,
            k=result.k,
            min_size=ref.min_size,
        )

    return BenchRow(
        **base,
        mode=result.mode,
        k=result.k,
        chosen=result.chosen,
        value=result.value,
        residual=result.residual,
        guarantee=result.guarantee,
        evaluations=result.evaluations,
        runs=result.runs,
        found=result.found,
        exact_value=optimum,
        exact_size=None if ref is None else ref.min_size,
        ratio=ratio,
        bound_ok=bound_ok,
        wall_time=wall_time,
    )


def _tasks(campaign: CampaignSpec) -> list[RowTask]:
    tasks: list[RowTask] = []
    for e, entry in enumerate(campaign.entries):
        gen = entry.generator
        for instance_seed in range(gen.seed_start, gen.seed_start + gen.count):
            instance: InstanceFile | None = None
            error: str | None = None
            try:
                instance = generate(gen.kind, instance_seed, gen.params)
            except SepmaxError as exc:
                logger.error("Generator %s seed %d failed: %s", gen.kind, instance_seed, exc)
                error = str(exc)
            for s, spec in enumerate(entry.solvers):
                for seed in range(spec.seed_start, spec.seed_start + spec.seeds):
                    tasks.append(
                        RowTask(
                            entry=e,
                            solver_index=s,
                            instance_seed=instance_seed,
                            instance_kind=gen.kind,
                            generator_params=gen.params,
                            spec=spec,
                            request=spec.request(seed),
                            instance=instance,
                            instance_error=error,
                        )
                    )
    return tasks


def run_campaign(campaign: CampaignSpec) -> BenchReport:
    """Run the full cross product; row order is canonical regardless of scheduling."""
    tasks = _tasks(campaign)
    references = ReferenceCache(campaign.exact_cap)
    logger.info("Campaign %s: %d rows on %d worker(s)", campaign.name, len(tasks), campaign.workers)

    rows: list[BenchRow] = []
    if campaign.workers == 1:
        rows = [run_row(task, references) for task in tasks]
    else:
        with ThreadPoolExecutor(max_workers=campaign.workers) as pool:
            futures = [pool.submit(run_row, task, references) for task in tasks]
            for done, fut in enumerate(as_completed(futures), 1):
                rows.append(fut.result())
                if done % 100 == 0:
                    logger.info("  %d/%d rows", done, len(tasks))

    rows.sort(key=lambda r: r.sort_key)
    return BenchReport(campaign=campaign.name, rows=rows, summaries=summarize(rows))
