"""Random states, unitaries and bases for the randomized suites."""

from __future__ import annotations

import math

import numpy as np

from . import operators as ops

__all__ = [
    "haar_unitary",
    "random_bloch_vector",
    "random_qubit_state",
    "random_density",
    "random_pure_density",
]


def haar_unitary(dim: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-distributed unitary from the QR factorization of a Ginibre matrix."""
    z = (rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))) / math.sqrt(2)
    q, r = np.linalg.qr(z)
    d = np.diagonal(r)
    return q * (d / np.abs(d))


def random_bloch_vector(rng: np.random.Generator, radius: float | None = None) -> np.ndarray:
    """Uniform point in the unit ball, or on the sphere of ``radius`` if given."""
    v = rng.standard_normal(3)
    v /= np.linalg.norm(v)
    if radius is None:
        radius = rng.uniform() ** (1.0 / 3.0)
    return radius * v


def random_qubit_state(rng: np.random.Generator, pure: bool = False) -> np.ndarray:
    v = random_bloch_vector(rng, 1.0 if pure else None)
    return ops.from_bloch(1.0, v)


def random_density(dim: int, rng: np.random.Generator) -> np.ndarray:
    """Normalized Wishart (Hilbert-Schmidt) random density matrix."""
    g = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    w = g @ g.conj().T
    w = 0.5 * (w + w.conj().T)
    return w / np.trace(w).real


def random_pure_density(dim: int, rng: np.random.Generator) -> np.ndarray:
    psi = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
    psi /= np.linalg.norm(psi)
    return np.outer(psi, psi.conj())
