import numpy as np
import pytest

from hadamard6 import dilate, example_quadruple
from hadamard6.classify import fourier6, tao_s6


@pytest.fixture(scope="session")
def example_report():
    return dilate(example_quadruple())


@pytest.fixture(scope="session")
def example_matrices(example_report):
    assert example_report.matrices, "worked example seed produced no matrix"
    return example_report.matrices


@pytest.fixture(scope="session")
def f6():
    return fourier6()


@pytest.fixture(scope="session")
def s6():
    return tao_s6()


def random_unit(rng, n=None):
    """Unimodular scalars (or arrays) from a seeded generator."""
    t = rng.random() if n is None else rng.random(n)
    return np.exp(2j * np.pi * t)
