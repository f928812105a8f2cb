import numpy as np
import pytest

from vaxnet.graph import Graph, jaccard_weights
from vaxnet.model import DiseaseParams


@pytest.fixture
def path3():
    """a - b - c as nodes 0 - 1 - 2."""
    return Graph(3, [(0, 1), (1, 2)])


@pytest.fixture
def path3_jaccard(path3):
    return jaccard_weights(path3)


@pytest.fixture
def triangle():
    return Graph(3, [(0, 1), (1, 2), (0, 2)])


@pytest.fixture
def star4():
    """Center 0 with leaves 1..4."""
    return Graph(5, [(0, i) for i in range(1, 5)])


@pytest.fixture
def k4():
    return Graph(4, [(u, v) for u in range(4) for v in range(u + 1, 4)])


def make_params(n, beta=2.0, gamma=0.6, omega_i=None, omega_r=None, omega_d=None):
    p = DiseaseParams(
        beta=beta,
        gamma=gamma,
        omega_i=np.ones(n) if omega_i is None else np.asarray(omega_i, float),
        omega_r=np.zeros(n) if omega_r is None else np.asarray(omega_r, float),
        omega_d=np.zeros(n) if omega_d is None else np.asarray(omega_d, float),
    )
    p.validate(n)
    return p
