"""
tests.test_core_classify
Predicates, scalars and the full report on catalog structures.
"""

import pytest

from hermlab.core import catalog
from hermlab.core.classify import (
    build_harness,
    evaluate_predicates,
    report_scalars,
    skl_residuals,
    theorem_suite,
)
from hermlab.core.config import HarnessConfig
from hermlab.core.harness import SUITES
from hermlab.core.types import CheckStatus


@pytest.mark.parametrize("name", catalog.names())
def test_catalog_golden_values(name):
    entry = catalog.get(name)
    report = theorem_suite(entry.structure())
    for predicate, expected in entry.expected.items():
        assert report.predicates[predicate].value is expected, predicate
    assert report.failures() == []


def test_kodaira_predicates(kodaira):
    predicates = evaluate_predicates(kodaira, HarnessConfig())
    expected = {
        "kahler": False,
        "balanced": False,
        "pluriclosed": True,
        "skl": True,
        "strominger_flat": False,
        "torsion_parallel": True,
        "vaisman": True,
    }
    for name, value in expected.items():
        assert predicates[name].value is value, name
    assert predicates["kahler"].residual > 0.1
    assert predicates["strongly_gauduchon"].value is None
    assert predicates["strongly_gauduchon"].status is CheckStatus.NOT_IMPLEMENTED


def test_vaisman_is_vacuous_off_surfaces(iwasawa):
    vaisman = evaluate_predicates(iwasawa, HarnessConfig())["vaisman"]
    assert vaisman.value is None
    assert vaisman.status is CheckStatus.VACUOUS


def test_kodaira_scalars(kodaira):
    scalars = report_scalars(kodaira)
    assert scalars["structure_scale"] == pytest.approx(1.0)
    assert scalars["torsion_norm_sq"] == pytest.approx(0.5)
    assert scalars["eta_norm_sq"] == pytest.approx(0.25)
    assert scalars["torsion_balance"] == pytest.approx(0.0, abs=1e-15)
    assert scalars["chern_torsion_norm_sq"] == pytest.approx(4.0)
    assert scalars["skl_residual"] == pytest.approx(0.0, abs=1e-12)
    assert scalars["b_eigenvalue_2"] == pytest.approx(0.5)


def test_skl_residual_forms(kodaira, iwasawa):
    assert max(skl_residuals(kodaira).values()) <= 1e-12
    residuals = skl_residuals(iwasawa)
    assert residuals["wedge"] > 1e-3
    assert residuals["components"] > 1e-3


def test_skl_checks_are_vacuous_without_skl(iwasawa):
    report = theorem_suite(iwasawa, suites=("skl",))
    assert report.identities["eta_parallel"].status is CheckStatus.VACUOUS
    assert report.identities["skl_implies_pluriclosed"].status is CheckStatus.VACUOUS
    assert report.identities["skl_iff_pluriclosed_and_parallel"].status is CheckStatus.PASS
    assert {r.suite for r in report.identities.values()} == {"skl"}


def test_surface_checks_on_kodaira(kodaira):
    report = theorem_suite(kodaira, suites=("surface",))
    assert set(report.identities) == {
        "surface_torsion_norm_balance",
        "surface_skl_equivalences",
        "lee_form_parallel_criterion",
    }
    assert all(r.status is CheckStatus.PASS for r in report.identities.values())


def test_every_suite_has_checks():
    harness = build_harness()
    for suite in SUITES:
        assert harness.selected([suite])


def test_threaded_report_matches_sequential(random_input):
    s = random_input(3, 2, 7)
    sequential = theorem_suite(s, HarnessConfig())
    threaded = theorem_suite(random_input(3, 2, 7), HarnessConfig(workers=4))
    assert list(threaded.identities) == list(sequential.identities)
    assert [r.status for r in threaded.identities.values()] == [
        r.status for r in sequential.identities.values()
    ]
    assert threaded.input.seed == 7


def test_report_json_is_stable(kodaira):
    first = theorem_suite(kodaira).to_json()
    second = theorem_suite(catalog.get("kodaira").structure()).to_json()
    assert first == second
