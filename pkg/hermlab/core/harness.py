"""
hermlab.core.harness

Registry of identity checks with pre/post/error hooks.
"""

import copy
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, Iterable, List, Optional

from .config import HarnessConfig
from .errors import CheckExecutionError
from .logging import get_logger
from .types import CheckStatus, IdentityResult, PredicateResult

logger = get_logger(__name__)

SUITES = ("structure", "curvature", "skl", "surface")
# alternative names accepted wherever a suite is selected
SUITE_ALIASES = {"lemma2": "curvature"}


@dataclass
class CheckContext:
    """Everything a check may read: the pipeline, its tolerance and the predicates."""

    structure: Any
    config: HarnessConfig
    predicates: Dict[str, PredicateResult] = field(default_factory=dict)

    def holds(self, predicate: str) -> bool:
        result = self.predicates.get(predicate)
        return bool(result is not None and result.value)


@dataclass
class Outcome:
    """
    Raw value returned by a check function.

    ``residual`` is compared against tol·(1 + σ^order). ``applicable=False`` marks a
    check whose hypothesis does not hold. ``status`` overrides the comparison, for
    checks that compare verdicts instead of magnitudes.
    """

    residual: float = 0.0
    order: int = 2
    applicable: bool = True
    status: Optional[CheckStatus] = None


class CheckMetadata:
    """
    Metadata for a registered check: its suite and description.
    """

    def __init__(
        self,
        func: Callable[[CheckContext], Outcome],
        name: Optional[str] = None,
        suite: str = "structure",
        description: Optional[str] = None,
        debug: bool = False,
    ):
        """
        :param func: Callable taking a CheckContext and returning an Outcome.
        :param name: Check identifier; defaults to the function name.
        :param suite: Suite the check belongs to.
        :param description: Optional description; defaults to the first docstring line.
        :param debug: Debug flag for logging.
        """
        if suite not in SUITES:
            raise ValueError(f"Unknown suite '{suite}'")
        self.func = func
        self.name = name or func.__name__
        self.suite = suite
        doc = (func.__doc__ or "").strip().splitlines()
        self.description = description or (doc[0] if doc else f"Check {self.name}")
        self.debug = debug
        self.harness = None

    def __call__(self, context: CheckContext) -> IdentityResult:
        """
        Run the check and grade its outcome.
        Calls pre, post, and error hooks as registered on the harness.
        :param context: Pipeline, config and predicates.
        :return: Graded result.
        :raises CheckExecutionError: If the check function raises.
        """
        harness = self.harness
        self._debug_print_call(harness)
        self._run_pre_hooks(context, harness)
        outcome = self._execute_check(context, harness)
        result = self._grade(outcome, context)
        self._run_post_hooks(result, harness)
        return result

    def _debugging(self, harness) -> bool:
        return bool(self.debug or (harness and getattr(harness, "debug", False)))

    def _debug_print_call(self, harness):
        if self._debugging(harness):
            logger.debug("[DEBUG] Running %s (%s)", self.name, self.suite)

    def _run_pre_hooks(self, context, harness):
        if harness is not None:
            for hook in harness._pre_hooks:
                hook(context, self)

    def _execute_check(self, context, harness) -> Outcome:
        try:
            return self.func(context)
        except Exception as e:
            if harness is not None:
                for hook in harness._error_hooks:
                    hook(e, self)
            msg = f"Check '{self.name}' failed to execute: {e}"
            if self._debugging(harness):
                logger.debug("[DEBUG] %s", msg)
            raise CheckExecutionError(msg) from e

    def _grade(self, outcome: Outcome, context: CheckContext) -> IdentityResult:
        scale = context.structure.scale ** outcome.order
        residual = float(outcome.residual)
        if outcome.status is not None:
            status = outcome.status
        elif not outcome.applicable:
            status = CheckStatus.VACUOUS
        elif residual <= context.config.threshold(scale):
            status = CheckStatus.PASS
        else:
            status = CheckStatus.FAIL
        if self._debugging(self.harness):
            logger.debug("[DEBUG] %s -> %s (residual %.3e)", self.name, status.value, residual)
        return IdentityResult(
            status=status,
            residual=residual,
            scale=scale,
            suite=self.suite,
            description=self.description,
        )

    def _run_post_hooks(self, result, harness):
        if harness is not None:
            for hook in harness._post_hooks:
                hook(result, self)


class Harness:
    """
    Ordered collection of checks with hooks.
    """

    def __init__(self, name: str, config: Optional[HarnessConfig] = None):
        """
        :param name: Name of the harness.
        :param config: Tolerance and execution settings.
        """
        self.name = name
        self.config = config or HarnessConfig()
        self.checks: Dict[str, CheckMetadata] = {}
        self._pre_hooks: List[Callable] = []
        self._post_hooks: List[Callable] = []
        self._error_hooks: List[Callable] = []

    @property
    def debug(self) -> bool:
        return self.config.debug

    def add_pre_hook(self, hook: Callable) -> None:
        """Register a pre-execution hook. Called with (context, meta) before the check runs."""
        self._pre_hooks.append(hook)

    def add_post_hook(self, hook: Callable) -> None:
        """Register a post-execution hook. Called with (result, meta) after the check runs."""
        self._post_hooks.append(hook)

    def add_error_hook(self, hook: Callable) -> None:
        """Register an error hook. Called with (exception, meta) if a check raises."""
        self._error_hooks.append(hook)

    def register(
        self,
        func: Callable[[CheckContext], Outcome],
        name: Optional[str] = None,
        suite: str = "structure",
        description: Optional[str] = None,
    ) -> CheckMetadata:
        """
        Register a check with the harness.
        :return: CheckMetadata instance.
        """
        metadata = CheckMetadata(func, name, suite, description)
        metadata.harness = self
        self.checks[metadata.name] = metadata
        return metadata

    def check(self, suite: str, name: Optional[str] = None) -> Callable:
        """Decorator form of register."""

        def decorator(func):
            self.register(func, name=name, suite=suite)
            return func

        return decorator

    def copy(self, config: HarnessConfig) -> "Harness":
        """Same checks and hooks, different config."""
        other = Harness(self.name, config)
        other._pre_hooks = list(self._pre_hooks)
        other._post_hooks = list(self._post_hooks)
        other._error_hooks = list(self._error_hooks)
        for meta in self.checks.values():
            clone = copy.copy(meta)
            clone.harness = other
            other.checks[meta.name] = clone
        return other

    def selected(self, suites: Iterable[str]) -> List[CheckMetadata]:
        wanted = {SUITE_ALIASES.get(suite, suite) for suite in suites}
        if "all" in wanted:
            wanted = set(SUITES)
        unknown = wanted - set(SUITES)
        if unknown:
            raise ValueError(f"Unknown suite(s): {', '.join(sorted(unknown))}")
        return [meta for meta in self.checks.values() if meta.suite in wanted]

    def run(self, context: CheckContext, suites: Iterable[str] = ("all",)) -> Dict[str, IdentityResult]:
        """
        Run the selected checks.

        With ``config.workers > 1`` checks run on a thread pool; the pipeline must be
        warmed up beforehand. Results keep registration order either way.
        """
        metas = self.selected(suites)
        workers = self.config.workers
        if workers > 1 and len(metas) > 1:
            with ThreadPoolExecutor(max_workers=workers) as pool:
                results = list(pool.map(lambda meta: meta(context), metas))
        else:
            results = [meta(context) for meta in metas]
        return {meta.name: result for meta, result in zip(metas, results)}
