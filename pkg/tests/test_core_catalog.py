"""
tests.test_core_catalog
Catalog lookup and random generators.
"""

import numpy as np
import pytest

from hermlab.core import catalog
from hermlab.core.errors import CatalogError
from hermlab.geometry.exterior import validate_algebra


def test_names():
    assert {"torus2", "torus3", "kodaira", "hopf", "iwasawa"} <= set(catalog.names())
    assert catalog.get("kodaira").provenance == "[PAPER]"
    with pytest.raises(CatalogError, match="available"):
        catalog.get("k3")


def test_random_two_step_is_deterministic():
    first = catalog.random_two_step(3, 2, 7)
    second = catalog.random_two_step(3, 2, 7)
    assert np.array_equal(first.dphi20, second.dphi20)
    assert np.array_equal(first.dphi11, second.dphi11)
    other = catalog.random_two_step(3, 2, 8)
    assert not np.array_equal(first.dphi11, other.dphi11)


@pytest.mark.parametrize("n,m", [(2, 1), (3, 1), (3, 2), (4, 2), (6, 3)])
def test_random_two_step_is_valid(n, m):
    a = catalog.random_two_step(n, m, 1)
    assert validate_algebra(a, 1e-12) == []
    assert np.abs(a.dphi20[:m]).max() == 0.0
    assert np.abs(a.dphi11[:m]).max() == 0.0


@pytest.mark.parametrize("n,m", [(2, 2), (3, 0), (7, 2), (2, 3)])
def test_random_two_step_rejects_bad_split(n, m):
    with pytest.raises(CatalogError):
        catalog.random_two_step(n, m, 0)


def test_random_metric_is_positive_definite():
    g = catalog.random_metric(4, 2)
    assert np.linalg.eigvalsh(g.g).min() >= 1.0 - 1e-12
