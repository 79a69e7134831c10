"""
hermlab.interfaces.cli.display

Rich rendering of reports, catalog entries and search traces.
"""

from typing import Dict, Iterable, Optional

from rich import box
from rich.console import Console
from rich.panel import Panel
from rich.table import Table

from ...core.catalog import CatalogEntry
from ...core.types import CheckStatus, Report, SearchTrace

STATUS_STYLE = {
    CheckStatus.PASS: "green",
    CheckStatus.VACUOUS: "dim",
    CheckStatus.FAIL: "bold red",
    CheckStatus.NOT_IMPLEMENTED: "yellow",
}


def sci(value: Optional[float]) -> str:
    """Scientific notation with 3 significant digits."""
    return "-" if value is None else f"{value:.2e}"


class ReportDisplay:
    """Handles report display formatting."""

    def __init__(self, console: Console):
        self.console = console

    def display_report(self, report: Report, failures_only: bool = False):
        info = report.input
        title = f"[bold blue]{info.name or 'input'}[/bold blue] (n = {info.dim}, tol = {sci(report.tolerance)})"
        self.console.print(Panel(title, box=box.ROUNDED, style="blue"))
        if not failures_only:
            self.console.print(self._predicates(report))
        self.console.print(self._identities(report, failures_only))
        if not failures_only:
            self.console.print(self._scalars(report.scalars))
        if report.trace is not None:
            SearchDisplay(self.console).display_trace(report.trace)
        self.display_verdict(report)

    def display_verdict(self, report: Report):
        failures = report.failures()
        if failures:
            self.console.print(f"[bold red]{len(failures)} failing check(s):[/bold red] {', '.join(failures)}")
        else:
            self.console.print("[bold green]All applicable checks pass[/bold green]")

    def _predicates(self, report: Report) -> Table:
        table = Table(title="[bold green]Predicates[/bold green]", header_style="bold green")
        table.add_column("Predicate", style="cyan")
        table.add_column("Value")
        table.add_column("Residual", justify="right")
        table.add_column("Scale", justify="right", style="dim")
        for name, res in report.predicates.items():
            if res.value is None:
                value = f"[{STATUS_STYLE[res.status]}]{res.status.value}[/]"
            else:
                value = "[green]true[/green]" if res.value else "[red]false[/red]"
            table.add_row(name, value, sci(res.residual), sci(res.scale))
        return table

    def _identities(self, report: Report, failures_only: bool) -> Table:
        table = Table(title="[bold green]Identities[/bold green]", header_style="bold green")
        table.add_column("Check", style="cyan", no_wrap=True)
        table.add_column("Suite", style="dim")
        table.add_column("Status")
        table.add_column("Residual", justify="right")
        for name, res in report.identities.items():
            if failures_only and res.status is not CheckStatus.FAIL:
                continue
            style = STATUS_STYLE[res.status]
            table.add_row(name, res.suite, f"[{style}]{res.status.value}[/]", sci(res.residual))
        return table

    def _scalars(self, scalars: Dict[str, float]) -> Table:
        table = Table(title="[bold green]Scalars[/bold green]", header_style="bold green")
        table.add_column("Name", style="cyan")
        table.add_column("Value", justify="right")
        for key, value in scalars.items():
            table.add_row(key, sci(value))
        return table

    def display_batch(self, rows: Iterable[tuple]):
        """One line per file: (path, status text, failing count)."""
        table = Table(title="[bold blue]Verification[/bold blue]", box=box.ROUNDED)
        table.add_column("File", style="cyan")
        table.add_column("Result")
        table.add_column("Failing", justify="right")
        for path, status, failing in rows:
            style = {"pass": "green", "fail": "bold red"}.get(status, "yellow")
            table.add_row(str(path), f"[{style}]{status}[/]", str(failing))
        self.console.print(table)


class CatalogDisplay:
    def __init__(self, console: Console):
        self.console = console

    def list_entries(self, entries: Iterable[CatalogEntry]):
        table = Table(title="[bold blue]Catalog[/bold blue]")
        table.add_column("Name", style="cyan", no_wrap=True)
        table.add_column("n", justify="right")
        table.add_column("Provenance", style="dim")
        table.add_column("Description", style="white")
        for entry in entries:
            table.add_row(entry.name, str(entry.n), entry.provenance, entry.description)
        self.console.print(table)

    def show_entry(self, entry: CatalogEntry):
        header = f"[bold blue]{entry.name}[/bold blue]\n[dim]{entry.description} {entry.provenance}[/dim]"
        self.console.print(Panel(header, box=box.ROUNDED))
        table = Table(title="Expected predicates", show_header=True, header_style="bold magenta")
        table.add_column("Predicate", style="cyan")
        table.add_column("Expected")
        for name, value in entry.expected.items():
            table.add_row(name, "[green]true[/green]" if value else "[red]false[/red]")
        self.console.print(table)


class SearchDisplay:
    def __init__(self, console: Console):
        self.console = console

    def display_trace(self, trace: SearchTrace, last: int = 10):
        style = "green" if trace.status == "converged" else "red"
        self.console.print(
            f"[bold]{trace.method}[/bold] seed {trace.seed}: "
            f"[{style}]{trace.status}[/] after {trace.iterations} iterations, "
            f"residual {sci(trace.final_residual)}"
        )
        if trace.report_tolerance is not None:
            self.console.print(f"report graded at tol {sci(trace.report_tolerance)}")
        table = Table(box=box.SIMPLE, header_style="bold")
        table.add_column("Iteration", justify="right")
        table.add_column("SKL", justify="right")
        table.add_column("∂∂̄ω", justify="right")
        table.add_column("∇ˢT", justify="right")
        for record in trace.records[-last:]:
            table.add_row(
                str(record.iteration),
                sci(record.skl_residual),
                sci(record.pluriclosed_residual),
                sci(record.torsion_parallel_residual),
            )
        self.console.print(table)
