import numpy as np
import pytest

from blochvar import basis_for


@pytest.fixture(scope="session")
def basis2():
    return basis_for(2)


@pytest.fixture(scope="session")
def basis3():
    return basis_for(3)


@pytest.fixture(scope="session")
def basis4():
    return basis_for(4)


@pytest.fixture(scope="session")
def np_rng():
    return np.random.default_rng(20240911)


def random_hermitian(rng, n):
    """Test-local Hermitian draw (independent of the package RNG)."""
    g = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    return (g + g.conj().T) / 2.0


def random_density(rng, n):
    g = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    m = g @ g.conj().T
    return m / np.trace(m).real
