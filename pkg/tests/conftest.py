import numpy as np
import pytest

from hwl.numerics import Grid

STEP = 2.0 ** -8


def make_grid(x_min: float, x_max: float, step: float = STEP) -> Grid:
    return Grid(x_min, step, int(round((x_max - x_min) / step)) + 1)


@pytest.fixture(scope="session")
def grid_8():
    return make_grid(-8.0, 8.0)


@pytest.fixture(scope="session")
def grid_16():
    return make_grid(-16.0, 16.0)


@pytest.fixture(scope="session")
def grid_32():
    return make_grid(-32.0, 32.0)


@pytest.fixture(scope="session")
def grid_64():
    return make_grid(-64.0, 64.0)


def rng(seed: int = 0) -> np.random.Generator:
    return np.random.default_rng(seed)
