import numpy as np
import pytest
from scipy.optimize import linear_sum_assignment

from chanmix.channel import DensityMatrix, channel_from_unitary
from chanmix.constructions import haar_random_unitary


def random_density(d: int, rng: np.random.Generator, pure: bool = False) -> DensityMatrix:
    if pure:
        v = rng.standard_normal(d) + 1j * rng.standard_normal(d)
        return DensityMatrix.pure(v)
    probs = rng.dirichlet(np.ones(d))
    basis = haar_random_unitary(d, int(rng.integers(2**31)))
    return DensityMatrix((basis * probs) @ basis.conj().T)


def random_dilated_channel(d: int, rng: np.random.Generator, mixed_env: bool = True):
    u = haar_random_unitary(d * d, int(rng.integers(2**31)))
    sigma = random_density(d, rng) if mixed_env else DensityMatrix.maximally_mixed(d)
    return channel_from_unitary(u, sigma), u, sigma


def multiset_distance(a, b) -> float:
    """Max matched distance between two eigenvalue multisets."""
    a = np.asarray(a, dtype=complex).reshape(-1)
    b = np.asarray(b, dtype=complex).reshape(-1)
    assert a.size == b.size
    cost = np.abs(a[:, None] - b[None, :])
    rows, cols = linear_sum_assignment(cost)
    return float(cost[rows, cols].max())


@pytest.fixture
def rng():
    return np.random.default_rng(1234)
