"""Shared fixtures: seeded generators and random complex matrices."""

import numpy as np
import pytest


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def crandn(rng):
    """Factory for m x n circular complex Gaussian matrices."""
    def make(m, n):
        return (rng.standard_normal((m, n)) + 1j * rng.standard_normal((m, n))) / np.sqrt(2)
    return make


@pytest.fixture
def random_psd(rng):
    """Factory for a random full-rank Hermitian PSD n x n matrix with the given trace."""
    def make(n, power=1.0):
        w = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
        c = w @ w.conj().T + 0.05 * np.eye(n)
        return c * (power / np.real(np.trace(c)))
    return make
