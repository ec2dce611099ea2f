"""Small-dimension complex linear algebra for statistical operators.

Matrices are plain ``numpy`` complex arrays. Eigenvalues come from the
cyclic Jacobi kernel in :mod:`qcaudit._kernels`; no LAPACK call is made on
any code path here, so the results are independent of the oracle tests
that compare against ``numpy.linalg``.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _kernels
from .constants import default_constants
from .errors import ValidationError

__all__ = [
    "DensityOperator",
    "kron",
    "hermitian_eigenvalues",
    "hermitian_eigh",
    "trace_norm",
    "evolve",
    "von_neumann_residual",
    "convex_combine",
    "commutator",
]

HERMITIAN_TOL = 1e-10
POSITIVITY_TOL = -1e-10


def _as_matrix(m) -> np.ndarray:
    a = np.asarray(m, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValidationError(f"expected a square matrix, got shape {a.shape}")
    return a


def _require_hermitian(a: np.ndarray, tol: float = HERMITIAN_TOL) -> None:
    dev = np.max(np.abs(a - a.conj().T)) if a.size else 0.0
    if dev > tol:
        raise ValidationError(f"matrix is not Hermitian (max deviation {dev:.3e})")


@dataclass(frozen=True, eq=False)
class DensityOperator:
    """Hermitian, unit-trace, positive semidefinite matrix."""

    matrix: np.ndarray

    def __post_init__(self) -> None:
        a = _as_matrix(self.matrix).copy()
        dev = np.max(np.abs(a - a.conj().T))
        if dev > 1e-12:
            raise ValidationError(f"density operator not Hermitian (max deviation {dev:.3e})")
        tr = np.trace(a)
        if abs(tr - 1.0) > 1e-12:
            raise ValidationError(f"density operator trace is {tr.real:.15g}, expected 1")
        w = hermitian_eigenvalues(a)
        if w[0] < POSITIVITY_TOL:
            raise ValidationError(f"density operator has negative eigenvalue {w[0]:.3e}")
        a.setflags(write=False)
        object.__setattr__(self, "matrix", a)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def eigenvalues(self) -> np.ndarray:
        return hermitian_eigenvalues(self.matrix)


def _unwrap(rho) -> np.ndarray:
    return rho.matrix if isinstance(rho, DensityOperator) else _as_matrix(rho)


def kron(a, b) -> np.ndarray:
    """Kronecker product; basis index (i, k) maps to row ``i*dim(b) + k``."""
    a = _as_matrix(a)
    b = _as_matrix(b)
    na, nb = a.shape[0], b.shape[0]
    out = np.empty((na * nb, na * nb), dtype=complex)
    for i in range(na):
        for j in range(na):
            out[i * nb:(i + 1) * nb, j * nb:(j + 1) * nb] = a[i, j] * b
    return out


def commutator(a, b) -> np.ndarray:
    a = _as_matrix(a)
    b = _as_matrix(b)
    return a @ b - b @ a


def hermitian_eigh(m) -> tuple[np.ndarray, np.ndarray]:
    """Ascending eigenvalues and eigenvector columns of a Hermitian matrix."""
    a = _as_matrix(m)
    _require_hermitian(a)
    # symmetrize so round-off asymmetry below tolerance cannot leak in
    return _kernels.jacobi_eigh(0.5 * (a + a.conj().T))


def hermitian_eigenvalues(m) -> np.ndarray:
    return hermitian_eigh(m)[0]


def trace_norm(m) -> float:
    """Sum of absolute eigenvalues of a Hermitian matrix."""
    return float(np.sum(np.abs(hermitian_eigenvalues(m))))


def _propagator(h: np.ndarray, t: float, hbar: float) -> np.ndarray:
    w, v = hermitian_eigh(h)
    phases = np.exp(-1j * w * (t / hbar))
    return (v * phases) @ v.conj().T


def evolve(rho, h, t: float, hbar: float | None = None) -> DensityOperator:
    """Unitary evolution ``U rho U^dagger`` with ``U = exp(-i H t / hbar)``."""
    r = _unwrap(rho)
    h = _as_matrix(h)
    if h.shape != r.shape:
        raise ValidationError(f"dimension mismatch: rho {r.shape} vs H {h.shape}")
    if hbar is None:
        hbar = default_constants().hbar
    u = _propagator(h, t, hbar)
    out = u @ r @ u.conj().T
    out = 0.5 * (out + out.conj().T)
    return DensityOperator(out)


def von_neumann_residual(rho, h, t: float, dt: float, hbar: float | None = None) -> float:
    """Central-difference check of ``-i hbar d(rho)/dt = [rho, H]``.

    ``rho`` is the state at time zero; the residual is evaluated at ``t``
    and is second-order accurate in ``dt``.
    """
    if dt <= 0:
        raise ValidationError("dt must be positive")
    if hbar is None:
        hbar = default_constants().hbar
    h = _as_matrix(h)
    r = _unwrap(rho)
    if h.shape != r.shape:
        raise ValidationError(f"dimension mismatch: rho {r.shape} vs H {h.shape}")

    def at(s: float) -> np.ndarray:
        u = _propagator(h, s, hbar)
        return u @ r @ u.conj().T

    lhs = -1j * hbar * (at(t + dt) - at(t - dt)) / (2.0 * dt)
    rt = at(t)
    return float(np.max(np.abs(lhs - (rt @ h - h @ rt))))


def convex_combine(rho1, rho2, w: float) -> DensityOperator:
    if not 0.0 < w < 1.0:
        raise ValidationError(f"weight must lie strictly between 0 and 1, got {w}")
    a, b = _unwrap(rho1), _unwrap(rho2)
    if a.shape != b.shape:
        raise ValidationError(f"dimension mismatch: {a.shape} vs {b.shape}")
    return DensityOperator(w * a + (1.0 - w) * b)
