"""
Shared fixtures for the SignQuery test suite.
"""

import numpy as np
import pytest

from tests.helpers import complete_graph, cycle_graph, path_graph, star_graph


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(12345)


@pytest.fixture
def path5():
    return path_graph(5)


@pytest.fixture
def cycle6():
    return cycle_graph(6)


@pytest.fixture
def k4():
    return complete_graph(4)


@pytest.fixture
def star7():
    return star_graph(7)
