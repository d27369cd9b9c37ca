import math

import numpy as np
import pytest

from mzduality.interferometer import InterferometerConfig
from mzduality.operators import projector, rotation_y
from mzduality.sampling import haar_unitary, random_density, random_qubit_state

PLUS = projector(np.array([1, 1]) / math.sqrt(2))
ZERO = projector(np.array([1, 0]))
ONE = projector(np.array([0, 1]))
SX = np.array([[0, 1], [1, 0]], dtype=complex)
SY = np.array([[0, -1j], [1j, 0]], dtype=complex)
SZ = np.diag([1.0, -1.0]).astype(complex)
QUARTER_TURN = rotation_y(math.pi / 2)  # exp(-i pi/4 sigma_y)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def random_config(rng, dim=None, pure=False, port="A"):
    dim = dim or int(rng.integers(2, 5))
    return InterferometerConfig(
        r=rng.uniform(0.01, 0.99),
        phi=rng.uniform(0, 2 * math.pi),
        particle_state=random_qubit_state(rng, pure=pure),
        detector_state=random_density(dim, rng),
        detector_unitary=haar_unitary(dim, rng),
        port=port,
    )


def make_config(r=0.5, phi=0.0, rho=PLUS, rho_d=ZERO, u=None, port="A"):
    u = np.eye(len(rho_d)) if u is None else u
    return InterferometerConfig(r, phi, rho, rho_d, u, port)
