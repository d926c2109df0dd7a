"""Dense complex linear algebra on d^n-dimensional operators.

Everything goes through eigen/singular decompositions; dimensions stay
<= ~350 at desk scale so exactness beats speed.
"""

from __future__ import annotations

import numpy as np

from .errors import DimensionMismatch, DomainError, NotHermitian

HERM_TOL = 1e-10
#: eigenvalues below this are treated as exact zeros for rank/support work
SUPPORT_TOL = 1e-10
#: floor applied inside matrix functions to separate noise from true kernel
CLAMP_FLOOR = 1e-14


def check_hermitian(A: np.ndarray, tol: float = HERM_TOL) -> None:
    dev = np.max(np.abs(A - A.conj().T))
    if dev > tol:
        raise NotHermitian(f"max |A - A^dag| = {dev:.3e} > {tol:.0e}")


def herm_eig(A: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Eigenvalues (real, descending) and unitary eigenvector columns."""
    check_hermitian(A)
    vals, vecs = np.linalg.eigh(A)
    return vals[::-1].copy(), vecs[:, ::-1].copy()


def mat_fn(A: np.ndarray, f, clamp: float = CLAMP_FLOOR) -> np.ndarray:
    """V f(max(lam, clamp)) V^dag for Hermitian PSD A."""
    vals, vecs = herm_eig(A)
    clamped = np.maximum(vals, clamp)
    fvals = np.asarray(f(clamped), dtype=float)
    if not np.all(np.isfinite(fvals)):
        raise DomainError("f undefined on a clamped eigenvalue")
    return (vecs * fvals) @ vecs.conj().T


def tensor(A: np.ndarray, B: np.ndarray) -> np.ndarray:
    return np.kron(A, B)


def partial_trace_B(M: np.ndarray, dimA: int, dimB: int) -> np.ndarray:
    """Tr_B of an operator on H_A (x) H_B."""
    if M.shape != (dimA * dimB, dimA * dimB):
        raise DimensionMismatch(
            f"operator is {M.shape}, expected {(dimA * dimB, dimA * dimB)}"
        )
    return np.trace(M.reshape(dimA, dimB, dimA, dimB), axis1=1, axis2=3)


def schatten2_norm(A: np.ndarray) -> float:
    return float(np.sqrt(np.sum(np.abs(A) ** 2)))


def trace_norm(A: np.ndarray) -> float:
    """Sum of |eigenvalues| for Hermitian A (the only case used here)."""
    vals, _ = herm_eig(A)
    return float(np.sum(np.abs(vals)))
