"""
tests.test_core_harness
Check registration, grading, hooks and threaded runs.
"""

from types import SimpleNamespace

import pytest

from hermlab.core.config import HarnessConfig
from hermlab.core.errors import CheckExecutionError
from hermlab.core.harness import CheckContext, Harness, Outcome
from hermlab.core.types import CheckStatus


def _context(scale: float = 1.0, **predicates) -> CheckContext:
    return CheckContext(structure=SimpleNamespace(scale=scale), config=HarnessConfig(tol=1e-9), predicates=predicates)


def test_grading_uses_scaled_threshold():
    harness = Harness("grading")

    @harness.check("structure")
    def small(ctx):
        """Small residual."""
        return Outcome(4e-9, order=2)

    @harness.check("structure")
    def large(ctx):
        return Outcome(6e-9, order=2)

    results = harness.run(_context(scale=2.0))
    assert results["small"].status is CheckStatus.PASS
    assert results["small"].scale == pytest.approx(4.0)
    assert results["small"].description == "Small residual."
    assert results["large"].status is CheckStatus.FAIL
    assert results["large"].description == "Check large"


def test_vacuous_and_overridden_status():
    harness = Harness("status")
    harness.register(lambda ctx: Outcome(applicable=False), name="vacuous", suite="skl")
    harness.register(lambda ctx: Outcome(1.0, status=CheckStatus.PASS), name="forced", suite="surface")
    results = harness.run(_context())
    assert results["vacuous"].status is CheckStatus.VACUOUS
    assert results["vacuous"].status.ok
    assert results["forced"].status is CheckStatus.PASS


def test_event_hooks():
    events = {"pre": 0, "post": 0, "error": 0}

    def pre(context, meta):
        events["pre"] += 1

    def post(result, meta):
        events["post"] += 1

    def error(exc, meta):
        events["error"] += 1

    def fail(ctx):
        raise RuntimeError("fail")

    harness = Harness("hooks")
    harness.add_pre_hook(pre)
    harness.add_post_hook(post)
    harness.add_error_hook(error)
    ok = harness.register(lambda ctx: Outcome(0.0), name="ok")
    ok(_context())
    assert events == {"pre": 1, "post": 1, "error": 0}
    broken = harness.register(fail, name="broken")
    with pytest.raises(CheckExecutionError, match="broken"):
        broken(_context())
    assert events["error"] == 1
    assert events["post"] == 1


def test_suite_selection():
    harness = Harness("suites")
    harness.register(lambda ctx: Outcome(), name="a", suite="structure")
    harness.register(lambda ctx: Outcome(), name="b", suite="skl")
    assert [m.name for m in harness.selected(["skl"])] == ["b"]
    assert [m.name for m in harness.selected(["all"])] == ["a", "b"]
    harness.register(lambda ctx: Outcome(), name="c", suite="curvature")
    assert [m.name for m in harness.selected(["lemma2"])] == ["c"]
    assert harness.selected(["lemma2", "curvature"]) == harness.selected(["curvature"])
    with pytest.raises(ValueError):
        harness.selected(["bogus"])
    with pytest.raises(ValueError):
        harness.register(lambda ctx: Outcome(), name="d", suite="nowhere")


def test_copy_keeps_checks_and_hooks():
    calls = []
    harness = Harness("original")
    harness.add_post_hook(lambda result, meta: calls.append(meta.name))
    harness.register(lambda ctx: Outcome(0.5), name="half")
    strict = harness.copy(HarnessConfig(tol=1e-3, workers=2))
    assert strict.checks["half"].harness is strict
    assert harness.checks["half"].harness is harness
    strict.run(_context())
    assert calls == ["half"]


def test_threaded_run_keeps_order():
    harness = Harness("threads", HarnessConfig(workers=4))
    for i in range(12):
        harness.register(lambda ctx, i=i: Outcome(float(i)), name=f"c{i}")
    results = harness.run(_context())
    assert list(results) == [f"c{i}" for i in range(12)]
    assert [r.residual for r in results.values()] == [float(i) for i in range(12)]
