"""
tests.test_core_specfile
Parsing, validation and export of manifold-spec files.
"""

import json

import numpy as np
import pytest

from hermlab.core import catalog
from hermlab.core.errors import MetricError, SpecFileError
from hermlab.core.specfile import (
    dump_spec,
    from_algebra,
    load_spec,
    parse_spec,
    save_spec,
    to_algebra,
)


def test_load_kodaira_fixture(fixtures_dir):
    spec = load_spec(fixtures_dir / "kodaira.json")
    algebra, metric = to_algebra(spec)
    assert spec.name == "kodaira"
    assert algebra.dphi11[1, 0, 0] == 1.0
    assert np.array_equal(metric.g, np.eye(2))


def test_ten_ten_terms_are_split_skew(fixtures_dir):
    algebra, _ = to_algebra(load_spec(fixtures_dir / "iwasawa.json"))
    assert algebra.dphi20[2, 0, 1] == -0.5
    assert algebra.dphi20[2, 1, 0] == 0.5


@pytest.mark.parametrize("name", ["kodaira", "hopf", "iwasawa", "hopf_x_elliptic"])
def test_export_and_reload(name, tmp_path):
    entry = catalog.get(name)
    path = tmp_path / f"{name}.json"
    save_spec(entry.spec(), path)
    algebra, metric = to_algebra(load_spec(path))
    assert np.allclose(algebra.dphi20, entry.algebra.dphi20)
    assert np.allclose(algebra.dphi11, entry.algebra.dphi11)
    assert np.array_equal(metric.g, np.eye(entry.n))


def test_export_keeps_non_identity_metric():
    algebra = catalog.random_two_step(3, 2, 7)
    metric = catalog.random_metric(3, 7)
    spec = from_algebra(algebra, metric)
    assert spec.metric is not None
    again = parse_spec(dump_spec(spec))
    assert again == spec
    _, reloaded = to_algebra(again)
    assert np.allclose(reloaded.g, metric.g)
    assert [t.k for t in spec.dphi] == sorted(t.k for t in spec.dphi)
    assert {t.kind for t in spec.dphi} <= {"10-10", "10-01"}


def test_identity_metric_is_omitted():
    spec = from_algebra(catalog.get("kodaira").algebra, catalog.get("kodaira").metric)
    assert "metric" not in json.loads(dump_spec(spec))


def test_parse_errors():
    with pytest.raises(SpecFileError, match="Invalid JSON"):
        parse_spec("{")
    with pytest.raises(SpecFileError, match="term 1:"):
        parse_spec({"dim": 2, "dphi": [{"k": 0, "kind": "10-01", "i": 1, "j": 1, "coeff": [1, 0]}]})
    with pytest.raises(SpecFileError, match="term 2:"):
        parse_spec(
            {
                "dim": 2,
                "dphi": [
                    {"k": 2, "kind": "10-01", "i": 1, "j": 1, "coeff": [1, 0]},
                    {"k": 2, "kind": "11-00", "i": 1, "j": 1, "coeff": [1, 0]},
                ],
            }
        )
    with pytest.raises(SpecFileError):
        parse_spec({"dim": 7})


def test_index_errors():
    out_of_range = parse_spec(
        {"dim": 2, "dphi": [{"k": 3, "kind": "10-01", "i": 1, "j": 1, "coeff": [1, 0]}]}
    )
    with pytest.raises(SpecFileError, match="term 1: index k=3"):
        to_algebra(out_of_range)
    diagonal = parse_spec(
        {"dim": 2, "dphi": [{"k": 2, "kind": "10-10", "i": 1, "j": 1, "coeff": [1, 0]}]}
    )
    with pytest.raises(SpecFileError, match="term 1:"):
        to_algebra(diagonal)


def test_metric_errors():
    wrong_shape = parse_spec({"dim": 2, "metric": [[[1, 0]]]})
    with pytest.raises(MetricError):
        to_algebra(wrong_shape)
    indefinite = parse_spec({"dim": 2, "metric": [[[1, 0], [0, 0]], [[0, 0], [-1, 0]]]})
    with pytest.raises(MetricError):
        to_algebra(indefinite)


def test_missing_file(tmp_path):
    with pytest.raises(SpecFileError, match="Cannot read"):
        load_spec(tmp_path / "absent.json")
