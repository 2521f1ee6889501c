"""
Shared fixtures for pytest tests.
"""

import random

import pytest

from domcol.config import Guards
from domcol.graph import (
    Graph,
    complete,
    cycle,
    disjoint_union,
    path,
    star,
)


@pytest.fixture
def rng() -> random.Random:
    """Fixture providing a seeded random generator."""
    return random.Random(20240601)


@pytest.fixture
def guards() -> Guards:
    """Fixture providing default size guards."""
    return Guards()


@pytest.fixture
def triangle() -> Graph:
    """Fixture providing K_3."""
    return complete(3)


@pytest.fixture
def p3() -> Graph:
    """Fixture providing the path 0-1-2."""
    return path(3)


@pytest.fixture
def p4() -> Graph:
    """Fixture providing the path 0-1-2-3."""
    return path(4)


@pytest.fixture
def c4() -> Graph:
    """Fixture providing the 4-cycle 0-1-2-3-0."""
    return cycle(4)


@pytest.fixture
def claw() -> Graph:
    """Fixture providing K_{1,3} with center 0."""
    return star(3)


@pytest.fixture
def two_cliques() -> Graph:
    """Fixture providing the cluster graph K_2 + K_3."""
    return disjoint_union(complete(2), complete(3))

