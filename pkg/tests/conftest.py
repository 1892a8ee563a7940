import numpy as np
import pytest


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def random_complex(rng, n):
    return rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))


def random_contraction(rng, n, norm=0.95):
    A = random_complex(rng, n)
    s = np.linalg.norm(A, 2)
    return A * (norm / s)


def random_hermitian(rng, n):
    A = random_complex(rng, n)
    return 0.5 * (A + A.conj().T)
