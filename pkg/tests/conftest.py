import numpy as np
import pytest

KAPPA_GRID = (0.5, 2.0, 10.0 / 3.0, 4.0, 16.0 / 3.0, 6.0, 20.0 / 3.0, 7.9)
KAPPA_MODERATE = (2.0, 10.0 / 3.0, 4.0, 16.0 / 3.0, 6.0)


@pytest.fixture
def rng():
    return np.random.default_rng(1234)
