"""Dense complex matrix algebra for the small spaces used here.

Every matrix is a plain ``numpy.ndarray`` of dtype ``complex128``. Joint
spaces are ordered particle-first, so the joint index of ``(i, k)`` is
``i * detector_dim + k``.
"""

from __future__ import annotations

import numpy as np

from . import tolerances as tol
from .errors import ContractViolation, DimensionError, RejectedSizeError

__all__ = [
    "IDENTITY2",
    "SIGMA_X",
    "SIGMA_Y",
    "SIGMA_Z",
    "PAULIS",
    "as_matrix",
    "dagger",
    "frozen",
    "ket",
    "projector",
    "is_hermitian",
    "is_unitary",
    "check_density",
    "check_unitary",
    "tensor",
    "partial_trace_detector",
    "hermitian_eigenvalues",
    "trace_norm",
    "to_bloch",
    "from_bloch",
    "rotation_y",
]

IDENTITY2 = np.eye(2, dtype=complex)
SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)
PAULIS = (SIGMA_X, SIGMA_Y, SIGMA_Z)
for _m in (IDENTITY2, *PAULIS):
    _m.setflags(write=False)


def as_matrix(a) -> np.ndarray:
    """Coerce to a finite square complex matrix."""
    m = np.asarray(a, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] == 0:
        raise DimensionError(f"expected a non-empty square matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise ContractViolation("matrix has non-finite entries")
    return m


def frozen(a) -> np.ndarray:
    """Read-only complex copy of ``a``."""
    m = np.array(a, dtype=complex)
    m.setflags(write=False)
    return m


def dagger(a: np.ndarray) -> np.ndarray:
    return np.conj(np.swapaxes(a, -1, -2))


def ket(index: int, dim: int) -> np.ndarray:
    v = np.zeros(dim, dtype=complex)
    v[index] = 1.0
    return v


def projector(v) -> np.ndarray:
    v = np.asarray(v, dtype=complex)
    return np.outer(v, v.conj())


def is_hermitian(h, atol: float = tol.HERMITICITY) -> bool:
    h = np.asarray(h)
    return bool(np.max(np.abs(h - dagger(h)), initial=0.0) <= atol)


def is_unitary(u, atol: float = tol.UNITARITY) -> bool:
    u = np.asarray(u)
    eye = np.eye(u.shape[0])
    return bool(np.max(np.abs(dagger(u) @ u - eye)) <= atol)


def check_density(rho, name: str = "state") -> np.ndarray:
    """Validate a density operator and return it as a read-only array.

    Raises ContractViolation unless the matrix is Hermitian, has unit trace
    and no eigenvalue below ``POSITIVITY``.
    """
    m = as_matrix(rho)
    if not is_hermitian(m):
        raise ContractViolation(f"{name} is not Hermitian")
    tr = np.trace(m)
    if abs(tr - 1.0) > tol.TRACE:
        raise ContractViolation(f"{name} has trace {tr.real:.15g}, expected 1")
    lowest = hermitian_eigenvalues(m)[0]
    if lowest < tol.POSITIVITY:
        raise ContractViolation(f"{name} has negative eigenvalue {lowest:.3e}")
    return frozen(m)


def check_unitary(u, name: str = "operator") -> np.ndarray:
    m = as_matrix(u)
    if not is_unitary(m):
        raise ContractViolation(f"{name} is not unitary")
    return frozen(m)


def tensor(a, b) -> np.ndarray:
    """Kronecker product; entry ``(i*db + k, j*db + l)`` is ``a[i, j] * b[k, l]``."""
    a = as_matrix(a)
    b = as_matrix(b)
    dim = a.shape[0] * b.shape[0]
    if dim > tol.MAX_JOINT_DIM:
        raise RejectedSizeError(
            f"tensor product dimension {dim} exceeds {tol.MAX_JOINT_DIM}"
        )
    return np.kron(a, b)


def partial_trace_detector(joint, particle_dim: int, detector_dim: int) -> np.ndarray:
    """Trace out the second (detector) factor of a particle-first joint matrix."""
    m = as_matrix(joint)
    if particle_dim < 1 or detector_dim < 1 or m.shape[0] != particle_dim * detector_dim:
        raise DimensionError(
            f"joint dimension {m.shape[0]} does not factor as "
            f"{particle_dim} x {detector_dim}"
        )
    blocks = m.reshape(particle_dim, detector_dim, particle_dim, detector_dim)
    return np.einsum("ikjk->ij", blocks)


def _eigenvalues_2x2(h: np.ndarray) -> np.ndarray:
    a = h[0, 0].real
    d = h[1, 1].real
    b = h[0, 1]
    mean = 0.5 * (a + d)
    # hypot keeps the discriminant accurate when the off-diagonal dominates
    radius = np.hypot(0.5 * (a - d), abs(b))
    return np.array([mean - radius, mean + radius])


def hermitian_eigenvalues(h) -> np.ndarray:
    """Ascending real eigenvalues of a Hermitian matrix.

    Dimension 2 uses the closed-form quadratic. Larger matrices go through
    LAPACK's symmetric solver, and every eigenpair is checked against the
    residual bound ``||Hv - lv|| <= EIGEN_RESIDUAL * max(1, ||H||)``.
    """
    h = as_matrix(h)
    if not is_hermitian(h, tol.EIGEN_HERMITICITY):
        raise ContractViolation("eigenvalues requested for a non-Hermitian matrix")
    if h.shape[0] == 1:
        return np.array([h[0, 0].real])
    if h.shape[0] == 2:
        return _eigenvalues_2x2(h)
    h = 0.5 * (h + dagger(h))
    values, vectors = np.linalg.eigh(h)
    residual = np.linalg.norm(h @ vectors - vectors * values, axis=0).max()
    scale = max(1.0, float(np.abs(values).max()))
    if residual > tol.EIGEN_RESIDUAL * scale:
        raise ArithmeticError(f"eigensolver residual {residual:.3e} above bound")
    return values


def trace_norm(h) -> float:
    """Sum of absolute eigenvalues of a Hermitian matrix."""
    return float(np.abs(hermitian_eigenvalues(h)).sum())


def to_bloch(h) -> tuple[float, np.ndarray]:
    """Write a 2x2 Hermitian ``h`` as ``(s*I + v.sigma) / 2``; return ``(s, v)``."""
    h = as_matrix(h)
    if h.shape != (2, 2):
        raise DimensionError("Bloch form is only defined for 2x2 matrices")
    if not is_hermitian(h, tol.EIGEN_HERMITICITY):
        raise ContractViolation("Bloch form requested for a non-Hermitian matrix")
    s = float(np.trace(h).real)
    v = np.array([np.trace(h @ p).real for p in PAULIS])
    return s, v


def from_bloch(s: float, v) -> np.ndarray:
    """Inverse of :func:`to_bloch`."""
    v = np.asarray(v, dtype=float)
    return 0.5 * (s * IDENTITY2 + v[0] * SIGMA_X + v[1] * SIGMA_Y + v[2] * SIGMA_Z)


def rotation_y(theta: float) -> np.ndarray:
    """``exp(-i theta sigma_y / 2)``, rotation by ``theta`` about the y axis."""
    c, s = np.cos(theta / 2), np.sin(theta / 2)
    return np.array([[c, -s], [s, c]], dtype=complex)
