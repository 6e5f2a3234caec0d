"""Shared fixtures: the bundled catalog, weight contexts, and seeded RNGs."""

import random

import pytest

from knotstat.catalog import Catalog, MultiplicityModel, builtin_catalog
from knotstat.semigroup import WeightFunction


@pytest.fixture(scope="session")
def cat() -> Catalog:
    return builtin_catalog()


@pytest.fixture(scope="session")
def wq2() -> WeightFunction:
    return WeightFunction(q=2)


@pytest.fixture(scope="session")
def model() -> MultiplicityModel:
    return MultiplicityModel()


@pytest.fixture()
def rng() -> random.Random:
    return random.Random(0xC0FFEE)
