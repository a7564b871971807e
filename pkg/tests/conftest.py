import numpy as np
import pytest


@pytest.fixture
def rng():
    return np.random.default_rng(20260810)


@pytest.fixture
def random_density():
    """Factory for random full-rank density matrices (mixtures of pure states)."""

    def make(rng, dim, n_pure=5):
        rho = np.zeros((dim, dim), dtype=complex)
        weights = rng.dirichlet(np.ones(n_pure))
        for w in weights:
            vec = rng.normal(size=dim) + 1j * rng.normal(size=dim)
            vec /= np.linalg.norm(vec)
            rho += w * np.outer(vec, vec.conj())
        rho = 0.5 * (rho + rho.conj().T)
        return rho / rho.trace().real

    return make


@pytest.fixture
def partial_trace_a():
    """Trace out qubit A of a 4x4 matrix in the {|11>,|10>,|01>,|00>} basis."""

    def trace_a(rho):
        blocks = rho.reshape(2, 2, 2, 2)
        return blocks[0, :, 0, :] + blocks[1, :, 1, :]

    return trace_a
