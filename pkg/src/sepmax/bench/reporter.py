"""Terminal rendering for bench reports."""

from __future__ import annotations

from rich.console import Console
from rich.markup import escape
from rich.panel import Panel
from rich.table import Table

from sepmax.bench.models import BenchReport


def _fmt(value: float | None, spec: str = ".4f") -> str:
    return "-" if value is None else format(value, spec)


def render_terminal_report(report: BenchReport, console: Console | None = None) -> None:
    """Summary panel plus one table row per solver label."""
    if console is None:
        console = Console()

    errors = sum(1 for r in report.rows if r.error is not None)
    breaches = [s for s in report.summaries if s.within_bound is False]
    style = "red" if breaches else "yellow" if errors else "green"
    console.print(
        Panel(
            f"  Campaign: {report.campaign}\n"
            f"  Rows: {len(report.rows)}\n"
            f"  Errors: {errors}\n"
            f"  Bound breaches: [{style}]{len(breaches)}[/{style}]",
            title="Bench Report",
            border_style=style,
        )
    )
    if not report.summaries:
        console.print("[dim]No rows.[/dim]")
        return

    table = Table(title="Solvers")
    table.add_column("Solver", style="bold")
    table.add_column("Rows", justify="right")
    table.add_column("Errors", justify="right")
    table.add_column("Worst ratio", justify="right")
    table.add_column("Mean ratio", justify="right")
    table.add_column("Failures", justify="right")
    table.add_column("Allowed rate", justify="right")
    table.add_column("Status")
    for s in report.summaries:
        if s.within_bound is None:
            status = "[dim]n/a[/dim]"
        elif s.within_bound:
            status = "[green]PASS[/green]"
        else:
            status = "[red]FAIL[/red]"
        table.add_row(
            s.label,
            str(s.rows),
            str(s.errors),
            _fmt(s.worst_ratio),
            _fmt(s.mean_ratio),
            f"{s.failures}/{s.checked}",
            _fmt(s.allowed_failure_rate, ".3f"),
            status,
        )
    console.print(table)

    failed = [r for r in report.rows if r.error is not None]
    if failed:
        console.print("\n[bold]Failed rows:[/bold]")
        for row in failed[:20]:
            where = f"{row.instance_id} / {row.label} seed {row.seed}"
            console.print(f"  [red]x[/red] {where}: {escape(row.error or '')}")


def render_json_report(report: BenchReport) -> str:
    return report.model_dump_json(indent=2)
