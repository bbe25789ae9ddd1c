import numpy as np
import pytest

from spinengine import CyclePoint, WorkingMedium, scheme_from_labels


def make_point(spin_a, spin_b, j, b1, b2, meas_a="x", meas_b="z", beta=1.0):
    medium = WorkingMedium(spin_a, spin_b, j)
    return CyclePoint(medium, b1, b2, scheme_from_labels(medium, meas_a, meas_b), beta)


def random_hermitian(rng, n):
    a = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    return (a + a.conj().T) / 2


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
