import numpy as np
import pytest

from app.core import make_params
from app.numerics import QuadratureSpec


@pytest.fixture
def params():
    """Resonance at the origin with unit width."""
    return make_params(omega=0.0, gamma=1.0)


@pytest.fixture
def shifted_params():
    return make_params(omega=0.7, gamma=1.3)


@pytest.fixture
def quad_spec():
    return QuadratureSpec()


@pytest.fixture
def rng():
    return np.random.default_rng(20240607)
