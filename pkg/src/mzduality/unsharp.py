"""Unsharp qubit observables induced by the interferometer and their joint measurability.

A two-outcome qubit observable is stored in Bloch form: its "+" effect is
``((1 + bias) I + direction . sigma) / 2``. The interference pattern at a port
and a guessing strategy on the detector each induce one such observable on
the particle; the setup measures the two jointly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from . import operators as ops
from . import tolerances as tol
from .errors import (
    ContractViolation,
    InfeasibleWitnessError,
    InvalidObservableError,
    UnsupportedRegimeError,
)
from .interferometer import InterferometerConfig, coupling_unitary, visibility_ratio
from .which_path import Strategy, eta_values

__all__ = [
    "UnsharpObservable",
    "JointObservable",
    "JMResult",
    "OracleResult",
    "OracleSearch",
    "interference_observable",
    "interference_effect_bruteforce",
    "guess_observable",
    "guess_effect_bruteforce",
    "jm_closed_form",
    "classify_margin",
    "oracle_search",
    "jm_oracle",
    "assemble_joint",
]


@dataclass(frozen=True)
class UnsharpObservable:
    bias: float
    direction: np.ndarray

    def __post_init__(self):
        v = np.array(self.direction, dtype=float).reshape(-1)
        if v.shape != (3,) or not np.all(np.isfinite(v)) or not math.isfinite(self.bias):
            raise InvalidObservableError("observable needs a finite bias and a 3-vector direction")
        if abs(self.bias) + np.linalg.norm(v) > 1.0 + 1e-12:
            raise InvalidObservableError(
                f"|bias| + |direction| = {abs(self.bias) + np.linalg.norm(v):.15g} exceeds 1"
            )
        v.setflags(write=False)
        object.__setattr__(self, "bias", float(self.bias))
        object.__setattr__(self, "direction", v)

    @classmethod
    def from_effect(cls, effect) -> UnsharpObservable:
        """Read bias and direction off the "+" effect matrix."""
        s, v = ops.to_bloch(effect)
        return cls(s - 1.0, v)

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.direction))

    def effect(self) -> np.ndarray:
        """The "+" effect as a 2x2 matrix."""
        return ops.from_bloch(1.0 + self.bias, self.direction)

    def complement_effect(self) -> np.ndarray:
        return ops.IDENTITY2 - self.effect()


@dataclass(frozen=True)
class JointObservable:
    """Four-outcome POVM; ``pm`` is outcome (+ for the first, - for the second)."""

    pp: np.ndarray
    pm: np.ndarray
    mp: np.ndarray
    mm: np.ndarray

    def effects(self) -> tuple[np.ndarray, ...]:
        return (self.pp, self.pm, self.mp, self.mm)

    def marginals(self) -> tuple[np.ndarray, np.ndarray]:
        """"+" effects of the two parent observables."""
        return self.pp + self.pm, self.pp + self.mp

    def min_eigenvalue(self) -> float:
        return min(ops.hermitian_eigenvalues(e)[0] for e in self.effects())

    def check(self, first: UnsharpObservable, second: UnsharpObservable) -> None:
        """Raise ContractViolation unless positivity, completeness and marginals hold."""
        if self.min_eigenvalue() < tol.WITNESS_POSITIVITY:
            raise ContractViolation("joint observable has a negative effect")
        if np.max(np.abs(sum(self.effects()) - ops.IDENTITY2)) > tol.COMPLETENESS:
            raise ContractViolation("joint observable effects do not sum to identity")
        m1, m2 = self.marginals()
        if (
            np.max(np.abs(m1 - first.effect())) > tol.COMPLETENESS
            or np.max(np.abs(m2 - second.effect())) > tol.COMPLETENESS
        ):
            raise ContractViolation("joint observable marginals differ from the parents")


def interference_observable(config: InterferometerConfig) -> UnsharpObservable:
    """Observable whose "+" effect gives the click probability at the configured port."""
    r, t = config.r, config.t
    amp = 2.0 * visibility_ratio(config) * math.sqrt(r * t)
    angle = config.phi + config.delta
    n = np.array([amp * math.cos(angle), amp * math.sin(angle), 2.0 * r - 1.0])
    if config.port == "B":
        n = -n
    # rounding can push |n| a hair above 1 for sharp settings
    norm = np.linalg.norm(n)
    if norm > 1.0:
        n = n / norm
    return UnsharpObservable(0.0, n)


def interference_effect_bruteforce(config: InterferometerConfig) -> np.ndarray:
    """Port effect obtained by tracing the detector out of the Heisenberg-picture projector."""
    u_qd = coupling_unitary(config)
    row = 0 if config.port == "A" else 1
    d = config.detector_dim
    click = ops.tensor(ops.projector(ops.ket(row, 2)), np.eye(d))
    heis = ops.dagger(u_qd) @ click @ u_qd
    return ops.partial_trace_detector(
        heis @ ops.tensor(ops.IDENTITY2, config.detector_state), 2, d
    )


def guess_observable(strategy: Strategy, rho_d, u) -> UnsharpObservable:
    """Observable for "the detector lands in ``strategy.subset``"."""
    etas = eta_values(strategy, rho_d, u)
    return UnsharpObservable(
        etas.eta_s + etas.eta_s_u - 1.0, np.array([0.0, 0.0, etas.eta_s - etas.eta_s_u])
    )


def guess_effect_bruteforce(config: InterferometerConfig, strategy: Strategy) -> np.ndarray:
    u_qd = coupling_unitary(config)
    d = config.detector_dim
    heis = ops.dagger(u_qd) @ ops.tensor(ops.IDENTITY2, strategy.projector()) @ u_qd
    return ops.partial_trace_detector(
        heis @ ops.tensor(ops.IDENTITY2, config.detector_state), 2, d
    )


class JMResult(NamedTuple):
    jointly_measurable: bool
    margin: float


def jm_closed_form(obs_m: UnsharpObservable, obs_n: UnsharpObservable) -> JMResult:
    """Closed-form joint-measurability test for a pair whose second observable is unbiased.

    ``margin`` is left side minus right side of the criterion; the pair is
    jointly measurable iff ``margin >= -JM_BOUNDARY``. Parallel directions
    and a trivial first observable are compatible without further checks;
    their margin is the left side alone.
    """
    if obs_n.bias != 0.0:
        raise UnsupportedRegimeError(
            "closed form needs an unbiased second observable; use jm_oracle"
        )
    x = obs_m.bias
    m, n = obs_m.direction, obs_n.direction
    m2 = float(m @ m)
    # factored so that sharp marginals give exact zeros instead of sqrt(1e-16)
    m_len = float(np.linalg.norm(m))
    a = (1.0 + x - m_len) * (1.0 + x + m_len)
    b = (1.0 - x - m_len) * (1.0 - x + m_len)
    if min(a, b) < -1e-12:
        raise InvalidObservableError("(1 +- bias)^2 < |direction|^2")
    lhs = math.sqrt(max(a, 0.0)) + math.sqrt(max(b, 0.0))
    cross = float(np.linalg.norm(np.cross(m, n)))
    if m2 == 0.0 or cross < tol.PARALLEL:
        return JMResult(True, lhs)
    dot = float(m @ n)
    rhs = 2.0 * cross / math.sqrt(m2 - dot * dot)
    margin = lhs - rhs
    return JMResult(margin >= -tol.JM_BOUNDARY, margin)


def classify_margin(margin: float) -> str:
    if abs(margin) <= tol.JM_BOUNDARY:
        return "boundary"
    return "jointly_measurable" if margin > 0 else "incompatible"


# --- grid oracle -----------------------------------------------------------
#
# A candidate G = (g0 I + g.sigma)/2. Each of the four positivity constraints
# reads (scalar - |vector|)/2 >= 0, and g0 enters every scalar linearly, so for
# fixed g the best g0 is the midpoint of its lower and upper bounds. The grid
# therefore runs over g only; the smallest eigenvalue at the optimal g0 is
# (upper - lower)/4, a concave function of g with Lipschitz constant 1/2.

_GRID_POINTS = 21
_COARSE_HALF_WIDTH = 1.0
_FINE_RESOLUTION = 1e-4
_FINAL_RESOLUTION = 1e-10
_MAX_RECENTER = 25
_LIPSCHITZ = 0.5


@dataclass(frozen=True)
class OracleSearch:
    """Outcome of the grid search.

    ``min_eigenvalue`` is the best smallest eigenvalue found over the four
    constraint matrices; ``certified`` is True when infeasibility follows
    from the Lipschitz bound on the full coarse grid.
    """

    jointly_measurable: bool
    min_eigenvalue: float
    g: np.ndarray
    resolution: float
    levels: int
    certified: bool


def _pair_params(obs1: UnsharpObservable, obs2: UnsharpObservable):
    a0, a = 1.0 + obs1.bias, obs1.direction
    b0, b = 1.0 + obs2.bias, obs2.direction
    return a0, a, b0, b


def _norms(points: np.ndarray, shift) -> np.ndarray:
    d = points - shift
    return np.sqrt(np.einsum("ij,ij->i", d, d))


def _margin_on(points: np.ndarray, a0, a, b0, b) -> tuple[np.ndarray, np.ndarray]:
    """Smallest eigenvalue and optimal g0 for each row of ``points``."""
    lower = np.maximum(_norms(points, 0.0), a0 + b0 - 2.0 + _norms(points, a + b))
    upper = np.minimum(a0 - _norms(points, a), b0 - _norms(points, b))
    return 0.25 * (upper - lower), 0.5 * (upper + lower)


def _unit_grid() -> np.ndarray:
    axis = np.linspace(-1.0, 1.0, _GRID_POINTS)
    gx, gy, gz = np.meshgrid(axis, axis, axis, indexing="ij")
    grid = np.stack([gx, gy, gz], axis=-1).reshape(-1, 3)
    grid.setflags(write=False)
    return grid


_UNIT_GRID = _unit_grid()


def _grid(center: np.ndarray, half_width: float) -> np.ndarray:
    return center + half_width * _UNIT_GRID


def _on_edge(flat_index: int) -> bool:
    idx = np.unravel_index(flat_index, (_GRID_POINTS,) * 3)
    return any(i in (0, _GRID_POINTS - 1) for i in idx)


def oracle_search(obs1: UnsharpObservable, obs2: UnsharpObservable) -> OracleSearch:
    """Nested-grid search for a joint-observable witness.

    The coarse grid spans ``[-1, 1]^3`` (every feasible ``g`` lies in the unit
    ball) with step 0.1. Each refinement recentres on the best point and cuts
    the step tenfold, recentring again while the best point sits on the box
    edge. The search stops as soon as a point with smallest eigenvalue
    ``>= -1e-9`` is found. Infeasibility is declared when the Lipschitz bound
    on the coarse grid rules out any witness, or otherwise once the step is
    at most ``1e-4`` and the local bound still lies below the tolerance.
    """
    params = _pair_params(obs1, obs2)
    threshold = tol.WITNESS_POSITIVITY
    center = np.zeros(3)
    half = _COARSE_HALF_WIDTH
    level = 0
    recentred = 0
    best_val, best_g0, best_g = -math.inf, 0.0, center
    while True:
        step = 2.0 * half / (_GRID_POINTS - 1)
        points = _grid(center, half)
        values, g0s = _margin_on(points, *params)
        i = int(np.argmax(values))
        if values[i] >= best_val:
            best_val, best_g0, best_g = float(values[i]), float(g0s[i]), points[i]
        done = dict(g=np.concatenate([[best_g0], best_g]), resolution=step, levels=level)
        if best_val >= threshold:
            return OracleSearch(True, best_val, certified=False, **done)
        # any point of a cube cell is within step*sqrt(3)/2 of a grid node
        bound = best_val + _LIPSCHITZ * (step * math.sqrt(3) / 2 + 1e-8)
        if level == 0 and bound < threshold:
            return OracleSearch(False, best_val, certified=True, **done)
        if level > 0 and _on_edge(i) and recentred < _MAX_RECENTER:
            center = points[i]
            recentred += 1
            continue
        if step <= _FINE_RESOLUTION and bound < threshold:
            return OracleSearch(False, best_val, certified=False, **done)
        if step <= _FINAL_RESOLUTION:
            return OracleSearch(best_val >= threshold, best_val, certified=False, **done)
        center = best_g
        half = step
        level += 1
        recentred = 0


class OracleResult(NamedTuple):
    jointly_measurable: bool
    witness: JointObservable | None


def jm_oracle(obs1: UnsharpObservable, obs2: UnsharpObservable) -> OracleResult:
    """Numerical joint-measurability test for any pair of qubit observables."""
    search = oracle_search(obs1, obs2)
    if not search.jointly_measurable:
        return OracleResult(False, None)
    g0, g = search.g[0], search.g[1:]
    witness = assemble_joint(ops.from_bloch(g0, g), obs1, obs2)
    return OracleResult(True, witness)


def assemble_joint(g, obs1: UnsharpObservable, obs2: UnsharpObservable) -> JointObservable:
    """Joint observable with ``M_++ = G`` and the remaining effects fixed by the marginals."""
    g = ops.as_matrix(g)
    if g.shape != (2, 2) or not ops.is_hermitian(g, tol.EIGEN_HERMITICITY):
        raise ContractViolation("witness must be a 2x2 Hermitian matrix")
    o1, o2 = obs1.effect(), obs2.effect()
    joint = JointObservable(g, o1 - g, o2 - g, ops.IDENTITY2 - o1 - o2 + g)
    lowest = joint.min_eigenvalue()
    if lowest < tol.WITNESS_POSITIVITY:
        raise InfeasibleWitnessError(f"witness effect has eigenvalue {lowest:.3e}")
    return joint
