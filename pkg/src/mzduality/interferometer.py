"""Mach-Zehnder interferometer with an asymmetric second beam splitter.

The particle state ``rho`` is the state after the (symmetric) first beam
splitter, written in the path basis ``|0>, |1>``. The two arms pick up phases
``+phi/2`` and ``-phi/2``; the ``|1>`` arm additionally drives a which-path
detector through ``U``. Port ``A`` is the ``<0|`` output of the second beam
splitter and port ``B`` the ``<1|`` output.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from typing import Literal

import numpy as np

from . import operators as ops
from .errors import DegeneratePortError, DimensionError, DomainError

__all__ = [
    "InterferometerConfig",
    "PathWeights",
    "beam_splitter_unitary",
    "coupling_unitary",
    "final_state",
    "detection_probability",
    "detection_probability_from_state",
    "path_weights",
    "predictability",
    "a_priori_visibility",
    "fringe_visibility",
    "visibility_ratio",
]

Port = Literal["A", "B"]

# |tr(rho_D U)| below this leaves the detector phase undefined; it is set to 0
_PHASE_FLOOR = 1e-15


@dataclass(frozen=True)
class InterferometerConfig:
    """One setting of the interferometer.

    ``r`` is the reflectivity of the second beam splitter, ``phi`` the
    relative phase in radians. Derived quantities (``w_plus``, ``alpha``,
    ``delta``...) are properties so they can never go stale.
    """

    r: float
    phi: float
    particle_state: np.ndarray
    detector_state: np.ndarray
    detector_unitary: np.ndarray
    port: Port = "A"
    _overlap: complex = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        r = float(self.r)
        if not 0.0 <= r <= 1.0 or math.isnan(r):
            raise DomainError(f"reflectivity must lie in [0, 1], got {self.r}")
        if not math.isfinite(float(self.phi)):
            raise DomainError("phase must be finite")
        if self.port not in ("A", "B"):
            raise DomainError(f"port must be 'A' or 'B', got {self.port!r}")
        rho = ops.check_density(self.particle_state, "particle state")
        if rho.shape != (2, 2):
            raise DimensionError("particle state must be 2x2")
        rho_d = ops.check_density(self.detector_state, "detector state")
        u = ops.check_unitary(self.detector_unitary, "detector unitary")
        if u.shape != rho_d.shape:
            raise DimensionError("detector state and unitary dimensions differ")
        if 2 * rho_d.shape[0] > ops.tol.MAX_JOINT_DIM:
            raise DimensionError("detector dimension above 8 is not supported")
        object.__setattr__(self, "r", r)
        object.__setattr__(self, "phi", float(self.phi))
        object.__setattr__(self, "particle_state", rho)
        object.__setattr__(self, "detector_state", rho_d)
        object.__setattr__(self, "detector_unitary", u)
        object.__setattr__(self, "_overlap", complex(np.trace(rho_d @ u)))

    @property
    def t(self) -> float:
        return 1.0 - self.r

    @property
    def detector_dim(self) -> int:
        return self.detector_state.shape[0]

    @property
    def w_plus(self) -> float:
        return float(self.particle_state[0, 0].real)

    @property
    def w_minus(self) -> float:
        return float(self.particle_state[1, 1].real)

    @property
    def coherence(self) -> complex:
        """``<0|rho|1>``."""
        return complex(self.particle_state[0, 1])

    @property
    def alpha(self) -> float:
        return cmath.phase(self.coherence)

    @property
    def detector_overlap(self) -> complex:
        """``tr(rho_D U)``."""
        return self._overlap

    @property
    def delta(self) -> float:
        if abs(self._overlap) < _PHASE_FLOOR:
            return 0.0
        return -cmath.phase(self._overlap)

    def replace(self, **changes) -> InterferometerConfig:
        kwargs = dict(
            r=self.r,
            phi=self.phi,
            particle_state=self.particle_state,
            detector_state=self.detector_state,
            detector_unitary=self.detector_unitary,
            port=self.port,
        )
        kwargs.update(changes)
        return InterferometerConfig(**kwargs)


@dataclass(frozen=True)
class PathWeights:
    w1: float
    w2: float
    w3: float
    w4: float

    def for_port(self, port: Port) -> tuple[float, float]:
        """Conditional prior of the two paths feeding ``port``."""
        return (self.w1, self.w2) if port == "A" else (self.w3, self.w4)


def beam_splitter_unitary(r: float) -> np.ndarray:
    """Real beam-splitter matrix ``[[sqrt r, sqrt t], [sqrt t, -sqrt r]]``."""
    if not 0.0 <= r <= 1.0:
        raise DomainError(f"reflectivity must lie in [0, 1], got {r}")
    sr, st = math.sqrt(r), math.sqrt(1.0 - r)
    return np.array([[sr, st], [st, -sr]], dtype=complex)


def coupling_unitary(config: InterferometerConfig) -> np.ndarray:
    """Joint evolution after the first beam splitter, on the ``2d`` space."""
    b = beam_splitter_unitary(config.r)
    phi0, phi1 = b[:, 0], b[:, 1]
    d = config.detector_dim
    e0 = np.outer(phi0, ops.ket(0, 2).conj())
    e1 = np.outer(phi1, ops.ket(1, 2).conj())
    u_qd = cmath.exp(0.5j * config.phi) * np.kron(e0, np.eye(d)) + cmath.exp(
        -0.5j * config.phi
    ) * np.kron(e1, config.detector_unitary)
    if not ops.is_unitary(u_qd):
        raise ArithmeticError("assembled coupling operator is not unitary")
    return u_qd


def final_state(config: InterferometerConfig) -> np.ndarray:
    """Joint particle-detector state after the second beam splitter."""
    u_qd = coupling_unitary(config)
    initial = ops.tensor(config.particle_state, config.detector_state)
    return u_qd @ initial @ ops.dagger(u_qd)


def detection_probability_from_state(config: InterferometerConfig) -> float:
    """Port-A (or B) click probability read off the full joint state."""
    rho_f = final_state(config)
    row = 0 if config.port == "A" else 1
    proj = ops.tensor(ops.projector(ops.ket(row, 2)), np.eye(config.detector_dim))
    return float(np.trace(proj @ rho_f).real)


def detection_probability(config: InterferometerConfig) -> float:
    """Closed-form click probability at the configured port."""
    r, t = config.r, config.t
    p_a = (
        r * config.w_plus
        + t * config.w_minus
        + 2.0
        * math.sqrt(r * t)
        * abs(config.coherence)
        * abs(config.detector_overlap)
        * math.cos(config.phi + config.alpha + config.delta)
    )
    return p_a if config.port == "A" else 1.0 - p_a


def _port_norm(config: InterferometerConfig) -> float:
    r, t = config.r, config.t
    if config.port == "A":
        norm = r * config.w_plus + t * config.w_minus
    else:
        norm = t * config.w_plus + r * config.w_minus
    if norm <= 0.0:
        raise DegeneratePortError(f"port {config.port} never fires for this config")
    return norm


def path_weights(config: InterferometerConfig) -> PathWeights:
    """Conditional path priors for both ports.

    Raises DegeneratePortError if the configured port never fires. If only
    the other port is degenerate its two weights are NaN.
    """
    _port_norm(config)
    r, t = config.r, config.t
    wp, wm = config.w_plus, config.w_minus
    norm_a = r * wp + t * wm
    norm_b = t * wp + r * wm
    w1, w2 = (r * wp / norm_a, t * wm / norm_a) if norm_a > 0 else (math.nan, math.nan)
    w3, w4 = (t * wp / norm_b, r * wm / norm_b) if norm_b > 0 else (math.nan, math.nan)
    return PathWeights(w1, w2, w3, w4)


def predictability(config: InterferometerConfig) -> float:
    wa, wb = path_weights(config).for_port(config.port)
    return abs(wa - wb)


def a_priori_visibility(config: InterferometerConfig) -> float:
    """Fringe contrast at the configured port with the detector switched off."""
    norm = _port_norm(config)
    return 2.0 * math.sqrt(config.r * config.t) * abs(config.coherence) / norm


def visibility_ratio(config: InterferometerConfig) -> float:
    """``|tr(rho_D U)|``, i.e. V / V0, defined even when V0 vanishes."""
    return abs(config.detector_overlap)


def fringe_visibility(config: InterferometerConfig) -> float:
    return a_priori_visibility(config) * visibility_ratio(config)
