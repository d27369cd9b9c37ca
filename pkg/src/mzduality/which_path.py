"""Path-guessing strategies on the which-path detector.

A strategy measures the detector in an orthonormal basis and guesses the
first path of the port whenever the outcome index lies in ``subset``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, NamedTuple

import numpy as np

from . import operators as ops
from . import tolerances as tol
from .errors import ContractViolation, DimensionError, DomainError
from .sampling import haar_unitary

__all__ = [
    "Strategy",
    "EtaPair",
    "eta_values",
    "guess_likelihood",
    "distinguishability",
    "gamma_term",
    "optimize_strategy",
    "helstrom_bound",
    "optimal_strategy",
]


@dataclass(frozen=True)
class Strategy:
    """Projective detector measurement plus the "guess path 1" outcome set.

    ``basis[k]`` is the k-th measurement vector.
    """

    basis: np.ndarray
    subset: frozenset[int]

    def __post_init__(self):
        basis = np.array(self.basis, dtype=complex)
        if basis.ndim != 2 or basis.shape[0] != basis.shape[1]:
            raise DimensionError("strategy basis must hold d vectors of length d")
        gram = basis.conj() @ basis.T
        if np.max(np.abs(gram - np.eye(basis.shape[0]))) > tol.ORTHONORMALITY:
            raise ContractViolation("strategy basis is not orthonormal")
        subset = frozenset(int(i) for i in self.subset)
        if any(i < 0 or i >= basis.shape[0] for i in subset):
            raise DomainError(f"subset {sorted(subset)} out of range for d={basis.shape[0]}")
        basis.setflags(write=False)
        object.__setattr__(self, "basis", basis)
        object.__setattr__(self, "subset", subset)

    @classmethod
    def computational(cls, dim: int, subset: Iterable[int]) -> Strategy:
        return cls(np.eye(dim, dtype=complex), frozenset(subset))

    @property
    def dim(self) -> int:
        return self.basis.shape[0]

    def complement(self) -> Strategy:
        return Strategy(self.basis, frozenset(range(self.dim)) - self.subset)

    def projector(self) -> np.ndarray:
        """Projector onto the span of the ``subset`` vectors."""
        rows = self.basis[sorted(self.subset)]
        return rows.T @ rows.conj()


class EtaPair(NamedTuple):
    """Probability of landing in ``subset`` without (``eta_s``) and with (``eta_s_u``) the kick."""

    eta_s: float
    eta_s_u: float

    @property
    def eta_sbar(self) -> float:
        return 1.0 - self.eta_s

    @property
    def eta_sbar_u(self) -> float:
        return 1.0 - self.eta_s_u


def _clip01(x: float) -> float:
    return min(1.0, max(0.0, x))


def eta_values(strategy: Strategy, rho_d, u) -> EtaPair:
    rho_d = np.asarray(rho_d, dtype=complex)
    u = np.asarray(u, dtype=complex)
    if rho_d.shape != (strategy.dim, strategy.dim) or u.shape != rho_d.shape:
        raise DimensionError("strategy and detector dimensions differ")
    kicked = u @ rho_d @ ops.dagger(u)
    idx = sorted(strategy.subset)
    w = strategy.basis[idx]
    eta = np.einsum("ki,ij,kj->", w.conj(), rho_d, w).real
    eta_u = np.einsum("ki,ij,kj->", w.conj(), kicked, w).real
    return EtaPair(_clip01(float(eta)), _clip01(float(eta_u)))


def guess_likelihood(w1: float, w2: float, etas: EtaPair) -> float:
    """Probability of naming the right path: ``w1*eta_S + w2*eta_Sbar^U``."""
    return w1 * etas.eta_s + w2 * etas.eta_sbar_u


def distinguishability(w1: float, w2: float, etas: EtaPair) -> float:
    return 2.0 * guess_likelihood(w1, w2, etas) - 1.0


def gamma_term(w1: float, w2: float, etas: EtaPair) -> float:
    """Strategy-dependent tightening term of the duality inequality."""
    return 2.0 * abs(
        w1 * math.sqrt(etas.eta_s * etas.eta_sbar)
        - w2 * math.sqrt(etas.eta_s_u * etas.eta_sbar_u)
    )


def _weighted_difference(rho_d, u, w1: float, w2: float) -> np.ndarray:
    rho_d = np.asarray(rho_d, dtype=complex)
    u = np.asarray(u, dtype=complex)
    delta = w1 * rho_d - w2 * (u @ rho_d @ ops.dagger(u))
    return 0.5 * (delta + ops.dagger(delta))


def helstrom_bound(rho_d, u, w1: float, w2: float) -> float:
    """Optimal distinguishability: trace norm of ``w1 rho_D - w2 U rho_D U^dag``."""
    return ops.trace_norm(_weighted_difference(rho_d, u, w1, w2))


def optimal_strategy(rho_d, u, w1: float, w2: float) -> Strategy:
    """Eigenbasis of the weighted difference, guessing path 1 on positive eigenvalues."""
    values, vectors = np.linalg.eigh(_weighted_difference(rho_d, u, w1, w2))
    subset = frozenset(int(i) for i in np.flatnonzero(values > 0))
    return Strategy(vectors.T, subset)


def _best_subset_value(basis: np.ndarray, delta: np.ndarray, w1: float, w2: float):
    diag = np.einsum("ki,ij,kj->k", basis.conj(), delta, basis).real
    subset = frozenset(int(i) for i in np.flatnonzero(diag > 0))
    # D = 2 tr(P_S delta) + w2 - w1
    return subset, 2.0 * diag[diag > 0].sum() + w2 - w1


def optimize_strategy(
    rho_d,
    u,
    w1: float,
    w2: float,
    search_budget: int = 16,
    seed: int | None = 0,
) -> tuple[Strategy, float]:
    """Best guessing strategy and its distinguishability.

    The analytic eigenbasis construction gives the optimum. ``search_budget``
    Haar-random bases (each with its best subset) are scored as well, as a
    cross-check; the best strategy seen overall is returned.
    """
    if search_budget < 1:
        raise DomainError("search_budget must be at least 1")
    rho_d = np.asarray(rho_d, dtype=complex)
    if rho_d.shape[0] > 8:
        raise DimensionError("detector dimension above 8 is not supported")
    strategy = optimal_strategy(rho_d, u, w1, w2)
    best = distinguishability(w1, w2, eta_values(strategy, rho_d, u))
    delta = _weighted_difference(rho_d, u, w1, w2)
    rng = np.random.default_rng(seed)
    for _ in range(search_budget):
        basis = haar_unitary(rho_d.shape[0], rng).T
        subset, value = _best_subset_value(basis, delta, w1, w2)
        if value > best:
            strategy, best = Strategy(basis, subset), value
    return strategy, best
