import numpy as np
import pytest

from jcdimer import ModelParams


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)


def random_symmetric(rng, n, scale=1.0):
    """Exactly symmetric random matrix: (a + a.T)/2 is bitwise symmetric."""
    a = rng.normal(scale=scale, size=(n, n))
    return (a + a.T) / 2.0


def random_params(rng, a_max=0.2, n_excitations=2):
    return ModelParams.from_detuning(
        delta=float(rng.uniform(-10.0, 10.0)),
        j=float(rng.uniform(0.0, 10.0)),
        a=float(rng.uniform(0.0, a_max)),
        n_excitations=n_excitations)
