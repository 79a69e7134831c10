"""
hermlab.interfaces.cli.core

Command-line interface: argument parsing, command dispatch and exit codes.

Exit codes: 0 success, 1 verification or convergence failure, 2 invalid input.
"""

import argparse
import json
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Tuple

from rich import box
from rich.console import Console
from rich.panel import Panel
from rich.text import Text

from ... import __version__
from ...core import catalog
from ...core.base import HarnessInterface
from ...core.classify import build_harness, theorem_suite
from ...core.config import HarnessConfig, SearchOptions
from ...core.errors import (
    AlgebraError,
    AlgebraValidationError,
    CatalogError,
    CheckExecutionError,
    ConfigError,
    MetricError,
    SpecFileError,
)
from ...core.harness import SUITE_ALIASES, SUITES
from ...core.logging import configure_logging, get_logger
from ...core.search import MetricParameterization, minimize
from ...core.specfile import dump_spec, from_algebra, load_spec, save_spec, to_algebra
from ...core.types import CheckStatus, FileOutputDestination, Report
from ...geometry.structure import HermitianStructure
from .display import CatalogDisplay, ReportDisplay, SearchDisplay

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_INVALID = 2

INVALID_INPUT = (
    SpecFileError,
    AlgebraValidationError,
    MetricError,
    CatalogError,
    AlgebraError,
    ConfigError,
)

SUITE_CHOICES = ("all", *SUITES, *SUITE_ALIASES)

logger = get_logger(__name__)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hermlab", description="Hermitian geometry of invariant structures"
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--debug", action="store_true", help="log check execution to stderr")
    parser.add_argument("--tol", type=float, default=None, help="relative tolerance (default 1e-9)")
    # --tol after the subcommand; when absent the global value stands
    tolerance = argparse.ArgumentParser(add_help=False)
    tolerance.add_argument("--tol", type=float, default=argparse.SUPPRESS, help="relative tolerance")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("inspect", parents=[tolerance], help="classify a manifold-spec file")
    p.add_argument("path", type=Path)
    p.add_argument("--format", choices=("text", "json"), default="text")

    p = sub.add_parser("verify", parents=[tolerance], help="run identity suites on a file or a directory of files")
    p.add_argument("path", type=Path)
    p.add_argument("--suite", choices=SUITE_CHOICES, default="all")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--jobs", type=int, default=1, help="worker threads for directories")
    p.add_argument("--out-dir", type=Path, default=None, help="write one JSON report per file")

    p = sub.add_parser("catalog", help="built-in reference structures")
    csub = p.add_subparsers(dest="action", required=True)
    csub.add_parser("list")
    show = csub.add_parser("show")
    show.add_argument("name")
    export = csub.add_parser("export")
    export.add_argument("name")
    export.add_argument("--out", type=Path, default=None)

    p = sub.add_parser("random", help="random two-step algebra")
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--split", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--with-metric", action="store_true", help="attach a random metric")
    p.add_argument("--out", type=Path, default=None)

    p = sub.add_parser("search", parents=[tolerance], help="search for a Strominger Kähler-like metric")
    p.add_argument("path", type=Path)
    p.add_argument("--max-iter", type=int, default=None)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--residual-tol", type=float, default=None)
    p.add_argument("--step-tol", type=float, default=None)
    p.add_argument("--method", choices=("nelder-mead", "powell"), default=None)
    p.add_argument("--perturbation", type=float, default=None)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--out", type=Path, default=None)
    return parser


class CLI(HarnessInterface):
    """
    Non-interactive command-line front end over the verification harness.
    """

    def __init__(self, name: str = "hermlab", description: str = "", console: Optional[Console] = None):
        self.console = console or Console()
        self.err_console = Console(stderr=True)
        self.name = name
        self.description = description or "Hermitian geometry of invariant structures"
        self.config: Dict[str, Any] = {
            "theme": "blue",
            "show_banner": True,
            "banner_name": self.name,
            "banner_description": self.description,
        }
        self.harness_config = HarnessConfig()
        super().__init__(build_harness(self.harness_config))
        self.report_display = ReportDisplay(self.console)
        self.catalog_display = CatalogDisplay(self.console)
        self.search_display = SearchDisplay(self.console)

    def customize(self, config: Dict[str, Any]):
        """Customize the CLI with configuration options."""
        super().customize(config)
        if "banner_name" in config:
            self.name = config["banner_name"]
        if "banner_description" in config:
            self.description = config["banner_description"]

    def _print_banner(self):
        if self.config.get("show_banner", True):
            banner = Text(self.name, style=f"bold {self.config['theme']}")
            subtitle = Text(self.description, style="dim")
            panel = Panel(
                f"{banner}\n{subtitle}",
                box=box.ROUNDED,
                style=self.config["theme"],
                padding=(0, 2),
            )
            self.console.print(panel)

    def _emit_json(self, payload: str):
        sys.stdout.write(payload if payload.endswith("\n") else payload + "\n")
        sys.stdout.flush()

    def _error(self, message: str):
        self.err_console.print(f"[red]{message}[/red]")

    def run(self, argv: Optional[Sequence[str]] = None) -> int:
        """Parse ``argv`` and run the selected command."""
        args = build_parser().parse_args(argv)
        configure_logging(args.debug)
        try:
            self.harness_config = HarnessConfig.from_env(tol=args.tol, debug=args.debug)
            self.harness = build_harness(self.harness_config)
            self.harness.add_post_hook(self._log_failure)
            self.harness.add_error_hook(self._log_check_error)
            if getattr(args, "format", None) == "text":
                self._print_banner()
            handler = getattr(self, f"_cmd_{args.command}")
            return handler(args)
        except INVALID_INPUT as e:
            self._error(f"Invalid input: {e}")
            for line in getattr(e, "diagnostics", []):
                self._error(f"  - {line}")
            return EXIT_INVALID
        except CheckExecutionError as e:
            self._error(str(e))
            return EXIT_FAILURE

    def _log_failure(self, result, meta):
        if result.status is CheckStatus.FAIL:
            logger.warning(
                "%s failed: residual %.3e (scale %.3e)", meta.name, result.residual, result.scale
            )

    def _log_check_error(self, exc: Exception, meta):
        logger.error("%s raised %s: %s", meta.name, type(exc).__name__, exc)

    def _load(self, path: Path) -> HermitianStructure:
        spec = load_spec(path)
        algebra, metric = to_algebra(spec)
        return HermitianStructure.from_input(
            algebra, metric, tol=self.harness_config.tol, seed=self.harness_config.seed
        )

    def _report(self, path: Path, suites=("all",), config: Optional[HarnessConfig] = None) -> Report:
        config = config or self.harness_config
        runner = self.harness if config is self.harness_config else build_harness(config)
        return theorem_suite(self._load(path), config, suites, runner=runner)

    def _show(self, report: Report, fmt: str, failures_only: bool = False):
        if fmt == "json":
            self._emit_json(report.to_json())
        else:
            self.report_display.display_report(report, failures_only=failures_only)

    def _cmd_inspect(self, args) -> int:
        self._show(self._report(args.path), args.format)
        return EXIT_OK

    def _cmd_verify(self, args) -> int:
        suites = (args.suite,)
        if args.path.is_dir():
            return self._verify_directory(args, suites)
        report = self._report(args.path, suites)
        if args.out_dir is not None:
            FileOutputDestination(args.out_dir / f"{args.path.stem}.report.json").send(report)
        self._show(report, args.format, failures_only=args.format == "text")
        return EXIT_OK if report.passed else EXIT_FAILURE

    def _verify_directory(self, args, suites) -> int:
        files = sorted(args.path.glob("*.json"))
        if args.jobs < 1:
            raise ConfigError("--jobs must be at least 1")
        config = self.harness_config

        def one(path: Path) -> Tuple[Path, str, int, Optional[Report]]:
            try:
                report = self._report(path, suites, config)
            except INVALID_INPUT as e:
                logger.warning("%s: %s", path.name, e)
                return path, "invalid", 0, None
            if args.out_dir is not None:
                FileOutputDestination(args.out_dir / f"{path.stem}.report.json").send(report)
            failing = len(report.failures())
            return path, "pass" if failing == 0 else "fail", failing, report

        if args.jobs > 1:
            with ThreadPoolExecutor(max_workers=args.jobs) as pool:
                rows = list(pool.map(one, files))
        else:
            rows = [one(path) for path in files]
        if args.format == "json":
            summary = {
                str(path): {"status": status, "failing": failing} for path, status, failing, _ in rows
            }
            self._emit_json(json.dumps(summary, indent=2, sort_keys=True))
        else:
            self.report_display.display_batch((p.name, s, f) for p, s, f, _ in rows)
        statuses = {status for _, status, _, _ in rows}
        if "invalid" in statuses:
            return EXIT_INVALID
        return EXIT_FAILURE if "fail" in statuses else EXIT_OK

    def _cmd_catalog(self, args) -> int:
        if args.action == "list":
            self.catalog_display.list_entries(catalog.get(name) for name in catalog.names())
            return EXIT_OK
        entry = catalog.get(args.name)
        if args.action == "show":
            self.catalog_display.show_entry(entry)
            return EXIT_OK
        spec = entry.spec()
        if args.out is None:
            self._emit_json(dump_spec(spec))
        else:
            save_spec(spec, args.out)
        return EXIT_OK

    def _cmd_random(self, args) -> int:
        algebra = catalog.random_two_step(args.dim, args.split, args.seed)
        metric = catalog.random_metric(args.dim, args.seed) if args.with_metric else None
        spec = from_algebra(algebra, metric)
        if args.out is None:
            self._emit_json(dump_spec(spec))
        else:
            save_spec(spec, args.out)
            self.console.print(f"[green]Wrote {args.out}[/green]")
        return EXIT_OK

    def _cmd_search(self, args) -> int:
        options = SearchOptions.build(
            max_iter=args.max_iter,
            seed=args.seed,
            residual_tol=args.residual_tol,
            step_tol=args.step_tol,
            method=args.method,
            perturbation=args.perturbation,
        )
        spec = load_spec(args.path)
        algebra, metric = to_algebra(spec)
        init = MetricParameterization(algebra.n).params_for(metric)
        result = minimize(algebra, init, options, tol=self.harness_config.tol)
        if args.out is not None:
            save_spec(from_algebra(algebra, result.metric, name=spec.name), args.out)
        if args.format == "json":
            payload = result.report if result.report is not None else result.trace
            self._emit_json(payload.model_dump_json(indent=2, exclude_none=True))
        else:
            self.search_display.display_trace(result.trace)
            if result.report is not None:
                self.report_display.display_verdict(result.report)
        if not result.converged:
            return EXIT_FAILURE
        return EXIT_OK if result.report.passed else EXIT_FAILURE


def main(argv: Optional[List[str]] = None) -> int:
    return CLI().run(argv)
