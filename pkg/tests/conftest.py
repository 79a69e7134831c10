"""
tests.conftest
Shared fixtures: fixture files, catalog structures and random inputs.
"""

from pathlib import Path

import pytest

from hermlab.core import catalog
from hermlab.geometry.structure import HermitianStructure

FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture
def fixtures_dir() -> Path:
    return FIXTURES


@pytest.fixture
def kodaira() -> HermitianStructure:
    return catalog.get("kodaira").structure()


@pytest.fixture
def iwasawa() -> HermitianStructure:
    return catalog.get("iwasawa").structure()


@pytest.fixture
def hopf() -> HermitianStructure:
    return catalog.get("hopf").structure()


def random_structure(n: int, m: int, seed: int) -> HermitianStructure:
    """Random two-step algebra with a random metric, both drawn from ``seed``."""
    algebra = catalog.random_two_step(n, m, seed)
    return HermitianStructure.from_input(algebra, catalog.random_metric(n, seed), seed=seed)


@pytest.fixture
def random_input():
    return random_structure
