import numpy as np
import pytest

from edpflow import make_network
from edpflow.grid import TorusGrid, reference_weights


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


@pytest.fixture(scope="session")
def exchange():
    """X1 <-> X2 with unit rate, unit diffusion, flat reference density."""
    return make_network(2, [((1, 0), (0, 1), 1.0)], (1.0, 1.0), (1.0, 1.0))


@pytest.fixture(scope="session")
def binary():
    """X1 + X2 <-> X3, unit coefficients."""
    return make_network(3, [((1, 1, 0), (0, 0, 1), 1.0)], (1.0, 1.0, 1.0), (1.0, 1.0, 1.0))


@pytest.fixture(scope="session")
def heat():
    """Single diffusing species, no reactions."""
    return make_network(1, [], (1.0,), (1.0,))


@pytest.fixture
def grid8():
    return TorusGrid(1, 8)


def weights(grid, net):
    return reference_weights(grid, net)
