import numpy as np
import pytest

from majorana_pairs import SIGMA_1, SIGMA_2, InvolutionPair, RandomSource


@pytest.fixture
def sigma_pair():
    """A = sigma_1, B = -sigma_2."""
    return InvolutionPair.certify(SIGMA_1, -SIGMA_2, 1e-10)


@pytest.fixture
def rng():
    return RandomSource(20261016)


def rel_err(x, y):
    return np.linalg.norm(np.asarray(x) - np.asarray(y)) / np.linalg.norm(np.asarray(y))


def random_complex(gen, shape):
    return gen.standard_normal(shape) + 1j * gen.standard_normal(shape)
