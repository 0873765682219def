"""CLI entrypoint for sepmax."""

from __future__ import annotations

import json
import logging
from pathlib import Path
from typing import Any

import typer
from pydantic import ValidationError
from rich.console import Console
from rich.logging import RichHandler
from rich.markup import escape
from rich.panel import Panel
from rich.table import Table

from sepmax import __version__
from sepmax.config import EXHAUSTIVE_LIMIT
from sepmax.exceptions import InvalidParamsError, SepmaxError
from sepmax.harness.models import InstanceKind
from sepmax.models import SeparabilityKind, SeparabilityReport, StructureReport

app = typer.Typer(
    name="sepmax",
    help="Approximation schemes for best-K-subset selection over separable set functions.",
    no_args_is_help=True,
)
console = Console()

# Register bench sub-command group.
from sepmax.bench.cli import bench_app  # noqa: E402

app.add_typer(bench_app, name="bench", help="Seeded benchmark campaigns.")


def _version_callback(value: bool) -> None:
    if value:
        console.print(f"sepmax {__version__}")
        raise typer.Exit()


@app.callback()
def main(
    version: bool = typer.Option(  # noqa: B008
        False, "--version", "-V", help="Show version", callback=_version_callback, is_eager=True
    ),
    verbose: bool = typer.Option(  # noqa: B008
        False, "--verbose", "-v", help="Debug logging to stderr"
    ),
) -> None:
    """sepmax: FPT approximation schemes for separable set functions."""
    logging.basicConfig(
        level=logging.DEBUG if verbose else logging.WARNING,
        format="%(message)s",
        handlers=[RichHandler(console=Console(stderr=True), show_path=False)],
        force=True,
    )


def _fail(e: SepmaxError, as_json: bool = False) -> typer.Exit:
    if as_json:
        payload = {"error": type(e).__name__, "message": str(e), "exit_code": e.exit_code}
        print(json.dumps(payload, indent=2))  # noqa: T201
    else:
        title = f"[red]{type(e).__name__}[/red]"
        console.print(Panel(escape(str(e)), title=title, border_style="red"))
    return typer.Exit(e.exit_code)


@app.command()
def solve(
    instance: Path = typer.Option(  # noqa: B008
        ..., "--instance", "-i", help="Instance file (YAML)"
    ),
    solver: str = typer.Option(  # noqa: B008
        ..., "--solver", "-s", help="brute, alg1, greedy, ptas, alg3-min, min-or-max, best-subset"
    ),
    k: int = typer.Option(1, "--k", help="Subset size K"),  # noqa: B008
    beta: float | None = typer.Option(None, "--beta", help="Approximation factor"),  # noqa: B008
    epsilon: float = typer.Option(  # noqa: B008
        0.05, "--epsilon", help="Failure probability of randomized solvers"
    ),
    p: float | None = typer.Option(  # noqa: B008
        None, "--p", help="Override the adapter's separability parameter"
    ),
    gamma: float | None = typer.Option(  # noqa: B008
        None, "--gamma", help="PTAS parameter (default: at-least p / m)"
    ),
    epsilon_ratio: float = typer.Option(  # noqa: B008
        0.1, "--epsilon-ratio", help="PTAS target: ratio 1 - epsilon_ratio"
    ),
    k_max: int | None = typer.Option(  # noqa: B008
        None, "--k-max", help="Largest K tried by best-subset (default: m)"
    ),
    seed: int = typer.Option(0, "--seed", help="Master seed"),  # noqa: B008
    out: Path | None = typer.Option(None, "--out", "-o", help="Write the JSON report"),  # noqa: B008
    budget_evals: int | None = typer.Option(  # noqa: B008
        None, "--budget-evals", help="Maximum K-subsets a brute-force enumeration may visit"
    ),
    budget_runs: int | None = typer.Option(  # noqa: B008
        None, "--budget-runs", help="Maximum single runs of a randomized solver"
    ),
    workers: int = typer.Option(1, "--workers", help="Threads for randomized restarts"),  # noqa: B008
    output_json: bool = typer.Option(False, "--json", help="Print the JSON report"),  # noqa: B008
) -> None:
    """Solve BestKSubset on an instance file."""
    try:
        from sepmax.harness.dispatch import solve as run_solve
        from sepmax.harness.models import SolveRequest
        from sepmax.harness.storage import load_instance, render_solve_report

        budgets: dict[str, Any] = {}
        if budget_evals is not None:
            budgets["enumeration"] = budget_evals
        if budget_runs is not None:
            budgets["runs"] = budget_runs
        try:
            request = SolveRequest.model_validate(
                {
                    "solver": solver,
                    "k": k,
                    "beta": beta,
                    "epsilon": epsilon,
                    "p": p,
                    "gamma": gamma,
                    "epsilon_ratio": epsilon_ratio,
                    "k_max": k_max,
                    "seed": seed,
                    "workers": workers,
                    "budgets": budgets,
                }
            )
        except ValidationError as exc:
            raise InvalidParamsError(f"Invalid solve parameters: {exc}") from exc

        inst = load_instance(instance)
        report = run_solve(inst, request)
        rendered = render_solve_report(report)
        if out is not None:
            out.parent.mkdir(parents=True, exist_ok=True)
            out.write_text(rendered)
        if output_json:
            print(rendered, end="")  # noqa: T201
            return

        result = report.result
        chosen = report.chosen_labels if report.chosen_labels is not None else result.chosen
        guarantee = "-" if result.guarantee is None else f"{result.guarantee:g}"
        p_used = "-" if report.p_used is None else f"{report.p_used:g}"
        lines = [
            f"  Instance: {report.instance_id} ({report.instance_kind})",
            f"  Solver: {report.solver} ({result.mode})  p: {p_used}  guarantee: {guarantee}",
            f"  Chosen (K={result.k}): {chosen}",
            f"  Value: {result.value:g}  Residual: {result.residual:g}",
            f"  Evaluations: {result.evaluations}  Runs: {result.runs}",
        ]
        if result.found is not None:
            lines.append(f"  Reached v(X): {'yes' if result.found else 'no'}")
        failed = [kind for kind, rep in report.certification.items() if not rep.holds]
        if failed:
            lines.append(f"  [yellow]Declared p fails for: {', '.join(failed)}[/yellow]")
        console.print(Panel("\n".join(lines), title="Solve", border_style="green"))
        if out is not None:
            console.print(f"[dim]Report written to {out}[/dim]")
    except SepmaxError as e:
        raise _fail(e, output_json) from e


def _print_separability(reports: list[SeparabilityReport]) -> None:
    table = Table(title="Separability")
    table.add_column("Kind", style="bold")
    table.add_column("p", justify="right")
    table.add_column("Holds")
    table.add_column("Witness")
    table.add_column("Extremal p", justify="right")
    for r in reports:
        holds = "[green]yes[/green]" if r.holds else "[red]no[/red]"
        if r.sampled:
            holds += " [dim](sampled)[/dim]"
        extremal = "-" if r.extremal_p is None else f"{r.extremal_p:g}"
        table.add_row(
            str(r.kind),
            f"{r.p_tested:g}",
            holds,
            "-" if r.witness is None else str(r.witness),
            extremal,
        )
    console.print(table)


def _print_structure(report: StructureReport) -> None:
    table = Table(title="Structure" + (" (sampled)" if report.sampled else ""))
    table.add_column("Property", style="bold")
    table.add_column("Holds")
    table.add_column("Witness")
    for name in ("nonneg", "monotone", "submodular"):
        ok = getattr(report, name)
        witness = report.witnesses.get(name)
        table.add_row(
            name,
            "[green]yes[/green]" if ok else "[red]no[/red]",
            "-" if witness is None else witness.model_dump_json(exclude_none=True),
        )
    console.print(table)


@app.command()
def verify(
    instance: Path = typer.Option(  # noqa: B008
        ..., "--instance", "-i", help="Instance file (YAML)"
    ),
    kind: SeparabilityKind | None = typer.Option(  # noqa: B008
        None, "--kind", help="Inequality to check (default: every kind with a known p)"
    ),
    p: float | None = typer.Option(  # noqa: B008
        None, "--p", help="Parameter to test (default: declared, then structural)"
    ),
    k: int = typer.Option(0, "--k", help="Committee size for OWA instances"),  # noqa: B008
    sampled_verify: int | None = typer.Option(  # noqa: B008
        None, "--sampled-verify", min=1, help="Check N random states above the exhaustive limit"
    ),
    structure: bool = typer.Option(  # noqa: B008
        False, "--structure", help="Also check non-negativity, monotonicity, submodularity"
    ),
    limit: int = typer.Option(  # noqa: B008
        EXHAUSTIVE_LIMIT, "--exhaustive-limit", min=1, help="Largest m checked exhaustively"
    ),
    seed: int = typer.Option(0, "--seed", help="Seed for sampled checks"),  # noqa: B008
    strict: bool = typer.Option(  # noqa: B008
        False, "--strict", help="Exit 1 when any check fails"
    ),
    output_json: bool = typer.Option(False, "--json", help="Print JSON"),  # noqa: B008
) -> None:
    """Check p-separability (and optionally submodular structure) of an instance."""
    try:
        from sepmax.harness.dispatch import build_oracle
        from sepmax.harness.storage import load_instance
        from sepmax.separability import check_structure
        from sepmax.separability import verify as run_verify

        inst = load_instance(instance)
        oracle, structural = build_oracle(inst, k)

        if kind is not None:
            targets = [kind]
        else:
            targets = [
                kd
                for kd in SeparabilityKind
                if p is not None
                or kd in inst.declared_p
                or structural.parameter(kd) is not None
            ]
        reports: list[SeparabilityReport] = []
        for target in targets:
            p_value = p
            if p_value is None:
                p_value = inst.declared_p.get(target, structural.parameter(target))
            if p_value is None:
                raise InvalidParamsError(f"No p known for {target}; pass --p")
            reports.append(
                run_verify(oracle, target, p_value, limit=limit, sampled=sampled_verify, seed=seed)
            )
        structure_report = (
            check_structure(oracle, limit=limit, sampled=sampled_verify, seed=seed)
            if structure
            else None
        )

        if output_json:
            data: dict[str, Any] = {
                "instance_id": inst.id,
                "separability": [r.model_dump(mode="json") for r in reports],
            }
            if structure_report is not None:
                data["structure"] = structure_report.model_dump(mode="json")
            print(json.dumps(data, indent=2))  # noqa: T201
        else:
            console.print(f"[bold]{inst.id}[/bold] ({inst.kind}, m={oracle.size})")
            if reports:
                _print_separability(reports)
            if structure_report is not None:
                _print_structure(structure_report)

        all_ok = all(r.holds for r in reports) and (
            structure_report is None or structure_report.ok
        )
        if strict and not all_ok:
            raise typer.Exit(1)
    except SepmaxError as e:
        raise _fail(e, output_json) from e


def _need(value: Any, flag: str, kind: InstanceKind) -> Any:
    if value is None:
        raise InvalidParamsError(f"gen {kind} requires {flag}")
    return value


@app.command()
def gen(
    kind: InstanceKind = typer.Argument(..., help="cover, owa or bmatching"),  # noqa: B008
    seed: int = typer.Option(0, "--seed", help="Generator seed"),  # noqa: B008
    out: Path | None = typer.Option(None, "--out", "-o", help="Write YAML here"),  # noqa: B008
    n_elements: int | None = typer.Option(None, "--n-elements", help="cover: elements"),  # noqa: B008
    n_sets: int | None = typer.Option(None, "--n-sets", help="cover: sets (m)"),  # noqa: B008
    max_freq: int | None = typer.Option(  # noqa: B008
        None, "--max-freq", help="cover: maximum element frequency"
    ),
    min_freq: int = typer.Option(  # noqa: B008
        1, "--min-freq", help="cover: minimum element frequency"
    ),
    weights: str = typer.Option(  # noqa: B008
        "integer", "--weights", help="cover/bmatching: unit, integer or real"
    ),
    agents: int | None = typer.Option(None, "--agents", help="owa: agents"),  # noqa: B008
    items: int | None = typer.Option(None, "--items", help="owa: items (m)"),  # noqa: B008
    approvals: int | None = typer.Option(  # noqa: B008
        None, "--approvals", help="owa: approvals per agent (k)"
    ),
    committee: int = typer.Option(2, "--committee", help="owa: OWA vector length"),  # noqa: B008
    preset: str = typer.Option("cc", "--preset", help="owa: cc, pav or bloc"),  # noqa: B008
    nx: int | None = typer.Option(None, "--nx", help="bmatching: X-vertices (m)"),  # noqa: B008
    ny: int | None = typer.Option(None, "--ny", help="bmatching: Y-vertices"),  # noqa: B008
    y_degree: int | None = typer.Option(  # noqa: B008
        None, "--y-degree", help="bmatching: maximum Y-degree"
    ),
    max_capacity: int = typer.Option(  # noqa: B008
        2, "--max-capacity", help="bmatching: largest X capacity"
    ),
) -> None:
    """Generate a seeded instance whose structural bounds hold by construction."""
    try:
        from sepmax.harness.generator import gen_bmatching, gen_cover, gen_owa
        from sepmax.harness.storage import dump_instance, save_instance

        if weights not in ("unit", "integer", "real"):
            raise InvalidParamsError(f"unknown weight mode {weights!r}")
        if kind == InstanceKind.COVER:
            instance = gen_cover(
                _need(n_elements, "--n-elements", kind),
                _need(n_sets, "--n-sets", kind),
                _need(max_freq, "--max-freq", kind),
                seed,
                min_freq=min_freq,
                weights=weights,  # type: ignore[arg-type]
            )
        elif kind == InstanceKind.OWA:
            instance = gen_owa(
                _need(agents, "--agents", kind),
                _need(items, "--items", kind),
                _need(approvals, "--approvals", kind),
                seed,
                committee=committee,
                preset=preset,
            )
        else:
            instance = gen_bmatching(
                _need(nx, "--nx", kind),
                _need(ny, "--ny", kind),
                _need(y_degree, "--y-degree", kind),
                seed,
                max_capacity=max_capacity,
                weights=weights,  # type: ignore[arg-type]
            )

        if out is None:
            print(dump_instance(instance), end="")  # noqa: T201
            return
        save_instance(out, instance)
        console.print(f"[green]Wrote {instance.id} to {out}[/green]")
    except SepmaxError as e:
        raise _fail(e) from e
