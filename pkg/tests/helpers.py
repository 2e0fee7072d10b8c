"""Seeded random fixtures shared across the test modules."""

import numpy as np

from densecode.channels import PauliChannelSpec
from densecode.states import DensityOperator

I2 = np.eye(2, dtype=complex)
SX = np.array([[0, 1], [1, 0]], dtype=complex)
SY = np.array([[0, -1j], [1j, 0]], dtype=complex)
SZ = np.array([[1, 0], [0, -1]], dtype=complex)


def rand_density(rng, dim, dims=None):
    g = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    m = g @ g.conj().T
    return DensityOperator(m / m.trace().real, dims or (dim, 1))


def rand_unitary(rng, d):
    g = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
    q, r = np.linalg.qr(g)
    return q * (np.diagonal(r) / np.abs(np.diagonal(r)))


def rand_marginal(rng, d):
    q = rng.exponential(size=(d, d))
    return PauliChannelSpec(d, q / q.sum())
