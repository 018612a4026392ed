import numpy as np
import pytest


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def block(a, b, c, d):
    """2x2 complex block of a + b i + c j + d k, written out independently of the package."""
    return np.array([[a + 1j * b, c + 1j * d], [-c + 1j * d, a - 1j * b]])
