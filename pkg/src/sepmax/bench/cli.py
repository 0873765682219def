"""CLI commands for benchmark campaigns."""

from __future__ import annotations

from pathlib import Path

import typer
from rich.console import Console
from rich.markup import escape

from sepmax.exceptions import SepmaxError

bench_app = typer.Typer(
    name="bench",
    help="Seeded benchmark campaigns against brute-force references.",
    no_args_is_help=True,
)
console = Console()

_SAMPLE_CAMPAIGN = """\
schema_version: 1
name: sample
exact_cap: 12
workers: 1
entries:
  - generator:
      kind: cover
      count: 20
      seed_start: 0
      params: {n_elements: 10, n_sets: 8, max_freq: 2}
    solvers:
      - solver: alg1
        label: alg1-beta0.7
        params: {k: 3, beta: 0.7}
      - solver: greedy
        params: {k: 3}
      - solver: alg3-min
        params: {k: 3, beta: 2.0, epsilon: 0.2}
        seeds: 5

  - generator:
      kind: owa
      count: 10
      params: {n_agents: 12, n_items: 7, k: 2, committee: 3, preset: pav}
    solvers:
      - solver: alg1
        params: {k: 3, beta: 0.5}
      - solver: min-or-max
        params: {k: 3, beta: 2.0, epsilon: 0.2}
        seeds: 3

  - generator:
      kind: bmatching
      count: 10
      params: {nx: 6, ny: 8, y_degree: 2}
    solvers:
      - solver: alg1
        params: {k: 2, beta: 0.5}
"""


def _fail(e: SepmaxError) -> typer.Exit:
    console.print(f"[red]Error:[/red] {escape(str(e))}")
    return typer.Exit(e.exit_code)


@bench_app.command()
def init(
    path: Path = typer.Argument(Path("campaign.yaml"), help="Campaign file to create"),  # noqa: B008
) -> None:
    """Write a sample campaign spec."""
    try:
        from sepmax.bench.storage import load_campaign

        if path.exists():
            console.print("[yellow]Campaign file already exists.[/yellow]")
            return
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(_SAMPLE_CAMPAIGN)
        console.print(f"[green]Created {path}[/green]")

        campaign = load_campaign(path)
        console.print(f"  {len(campaign.entries)} generator entries ready.")
        console.print(f"\nNext: [bold]sepmax bench run {path}[/bold]")
    except SepmaxError as e:
        raise _fail(e) from e


@bench_app.command()
def run(
    campaign_path: Path = typer.Argument(..., help="Campaign spec (YAML)"),  # noqa: B008
    out: Path | None = typer.Option(None, "--out", "-o", help="Write the JSON report here"),  # noqa: B008
    workers: int | None = typer.Option(  # noqa: B008
        None, "--workers", min=1, help="Parallel rows (overrides the campaign)"
    ),
    output_json: bool = typer.Option(False, "--json", help="Print the JSON report"),  # noqa: B008
) -> None:
    """Run a campaign and score every row against brute force."""
    try:
        from sepmax.bench.reporter import render_json_report, render_terminal_report
        from sepmax.bench.runner import run_campaign
        from sepmax.bench.storage import load_campaign, save_bench_report

        campaign = load_campaign(campaign_path)
        if workers is not None:
            campaign = campaign.model_copy(update={"workers": workers})
        report = run_campaign(campaign)

        if out is not None:
            save_bench_report(out, report)
        if output_json:
            print(render_json_report(report))  # noqa: T201
            return
        render_terminal_report(report, console=console)
        if out is not None:
            console.print(f"\n[dim]Report written to {out}[/dim]")
    except SepmaxError as e:
        raise _fail(e) from e


@bench_app.command()
def report(
    report_path: Path = typer.Argument(..., help="Saved bench report (JSON)"),  # noqa: B008
    output_json: bool = typer.Option(False, "--json", help="Print the JSON report"),  # noqa: B008
) -> None:
    """Render a saved bench report."""
    try:
        from sepmax.bench.reporter import render_json_report, render_terminal_report
        from sepmax.bench.storage import load_bench_report

        saved = load_bench_report(report_path)
        if output_json:
            print(render_json_report(saved))  # noqa: T201
            return
        render_terminal_report(saved, console=console)
    except SepmaxError as e:
        raise _fail(e) from e
