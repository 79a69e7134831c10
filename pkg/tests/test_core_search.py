"""
tests.test_core_search
Metric parameterisation and the SKL metric search.
"""

import numpy as np
import pytest

from hermlab.core import catalog
from hermlab.core.config import SearchOptions
from hermlab.core.search import (
    MetricParameterization,
    minimize,
    run_searches,
    skl_residual,
)
from hermlab.geometry.hermitian import HermitianMetric


def test_parameterization():
    p = MetricParameterization(3)
    assert p.size == 8
    assert np.allclose(p.metric(p.identity()).g, np.eye(3))
    x = p.perturbed(4, 0.3)
    g = p.metric(x)
    assert g.g[0, 0] == pytest.approx(1.0)
    assert np.allclose(p.params_for(g), x)
    with pytest.raises(ValueError):
        p.factor(np.zeros(3))


def test_params_for_rescales_first_entry():
    p = MetricParameterization(2)
    g = p.metric(np.array([0.2, 0.1, -0.3]))
    scaled = type(g)(4.0 * g.g)
    assert np.allclose(p.params_for(scaled), [0.2, 0.1, -0.3])


def test_residuals_on_catalog():
    assert skl_residual(catalog.get("kodaira").algebra) <= 1e-20
    assert skl_residual(catalog.get("iwasawa").algebra) > 1e-3
    assert skl_residual(catalog.get("torus3").algebra) == 0.0


def test_search_from_skl_metric_stops_at_once():
    result = minimize(catalog.get("kodaira").algebra)
    assert result.converged
    assert result.trace.iterations == 0
    assert result.report is not None
    assert result.report.passed
    assert result.report.trace == result.trace


def _tilted_hopf_start(w: float = 0.5) -> np.ndarray:
    # ψ₂ = φ₂ + wφ₁ tilts the metric off the SKL family of diagonal metrics
    g = HermitianMetric(np.array([[1.0 + w * w, w], [w, 1.0]], dtype=complex))
    return MetricParameterization(2).params_for(g)


def test_search_reaches_skl_metric_from_tilted_hopf():
    a = catalog.get("hopf").algebra
    options = SearchOptions(max_iter=2000, seed=0)
    start = _tilted_hopf_start()
    assert skl_residual(a, start) > options.residual_tol
    result = minimize(a, start, options)
    records = result.trace.records
    assert result.converged
    assert result.trace.iterations > 0
    assert len(records) > 1
    assert records[0].skl_residual > options.residual_tol
    assert records[-1].skl_residual <= options.residual_tol
    assert result.trace.final_residual <= options.residual_tol
    assert result.report.trace == result.trace
    assert result.report.predicates["skl"].value


def test_witness_report_records_its_tolerance():
    result = minimize(catalog.get("hopf").algebra, _tilted_hopf_start(), SearchOptions(max_iter=2000), tol=1e-9)
    assert result.converged
    expected = max(1e-9, 100.0 * np.sqrt(result.trace.final_residual))
    assert result.trace.report_tolerance == pytest.approx(expected)
    assert result.report.tolerance == result.trace.report_tolerance
    exact = minimize(catalog.get("kodaira").algebra, tol=1e-9)
    assert exact.trace.report_tolerance == 1e-9
    assert exact.report.tolerance == 1e-9


def test_search_on_iwasawa_does_not_converge():
    a = catalog.get("iwasawa").algebra
    p = MetricParameterization(3)
    options = SearchOptions(max_iter=150, seed=2)
    result = minimize(a, p.perturbed(2, 0.1), options)
    assert not result.converged
    assert result.trace.status in ("max_iter", "stalled")
    assert result.trace.final_residual > 1e-3
    assert result.report is None


def test_search_is_deterministic():
    a = catalog.get("iwasawa").algebra
    p = MetricParameterization(3)
    options = SearchOptions(max_iter=40, seed=5, method="powell")
    first = minimize(a, p.perturbed(5, 0.1), options)
    second = minimize(a, p.perturbed(5, 0.1), options)
    assert first.trace == second.trace
    assert first.trace.method == "Powell"


def test_trace_records_residuals():
    a = catalog.get("iwasawa").algebra
    result = minimize(a, None, SearchOptions(max_iter=20))
    records = result.trace.records
    assert records[0].iteration == 0
    assert len(records[0].params) == 8
    assert all(r.pluriclosed_residual > 0.0 for r in records)


@pytest.mark.slow
def test_perturbed_kodaira_searches_converge():
    a = catalog.get("kodaira").algebra
    results = run_searches(a, range(10), SearchOptions(max_iter=5000), workers=2)
    assert [r.trace.seed for r in results] == list(range(10))
    converged = [r for r in results if r.converged]
    assert len(converged) >= 8
    for r in converged:
        assert r.trace.final_residual <= 1e-8
        assert r.report.passed
        assert r.report.predicates["skl"].value


@pytest.mark.slow
def test_iwasawa_searches_stay_away_from_skl():
    a = catalog.get("iwasawa").algebra
    for result in run_searches(a, range(10), SearchOptions(max_iter=500)):
        assert result.trace.final_residual > 1e-3
