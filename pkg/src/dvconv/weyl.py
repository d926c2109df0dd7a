"""Weyl operators, characteristic-function transform, Pauli rank,
and Clifford detection.

Phase-space points of an n-qudit system are length-2n integer vectors
(p_1..p_n, q_1..q_n) with canonical residues in [0, d-1].  Characteristic
tables are dense over all d^{2n} points in row-major (p, q) order.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import NotUnitary
from .linalg import SUPPORT_TOL
from .zmod import mod_inverse

UNITARY_TOL = 1e-10
CLIFFORD_TOL = 1e-9


def xi(d: int) -> complex:
    return np.exp(2j * np.pi / d)


@lru_cache(maxsize=None)
def _clock_shift(d: int) -> tuple[np.ndarray, np.ndarray]:
    """(Z, X) for a single qudit: Z|k> = xi^k |k>, X|k> = |k+1>."""
    Z = np.diag(xi(d) ** np.arange(d))
    X = np.roll(np.eye(d, dtype=complex), 1, axis=0)
    Z.flags.writeable = False
    X.flags.writeable = False
    return Z, X


@lru_cache(maxsize=None)
def _single_weyl_table(d: int) -> np.ndarray:
    """All d^2 single-qudit Weyl operators, indexed by p*d + q."""
    Z, X = _clock_shift(d)
    out = np.empty((d * d, d, d), dtype=complex)
    for p in range(d):
        Zp = np.linalg.matrix_power(Z, p)
        for q in range(d):
            m = Zp @ np.linalg.matrix_power(X, q)
            if d == 2:
                phase = (-1j) ** ((p * q) % 4)
            else:
                phase = xi(d) ** (-mod_inverse(2, d) * p * q)
            out[p * d + q] = phase * m
    out.flags.writeable = False
    return out


def weyl_op(d: int, n: int, p, q) -> np.ndarray:
    """w(p, q) = w(p_1, q_1) (x) ... (x) w(p_n, q_n)."""
    p = np.asarray(p, dtype=np.int64).reshape(n) % d
    q = np.asarray(q, dtype=np.int64).reshape(n) % d
    table = _single_weyl_table(d)
    out = table[p[0] * d + q[0]]
    for k in range(1, n):
        out = np.kron(out, table[p[k] * d + q[k]])
    return out


@lru_cache(maxsize=None)
def phase_points(d: int, n: int) -> np.ndarray:
    """All d^{2n} labels as rows (p_1..p_n, q_1..q_n), row-major order."""
    grids = np.indices((d,) * (2 * n)).reshape(2 * n, -1).T
    pts = np.ascontiguousarray(grids.astype(np.int64))
    pts.flags.writeable = False
    return pts


def point_index(label, d: int) -> int:
    """Row-major index of a length-2n label."""
    label = np.asarray(label, dtype=np.int64) % d
    idx = 0
    for digit in label:
        idx = idx * d + int(digit)
    return idx


@lru_cache(maxsize=None)
def neg_perm(d: int, n: int) -> np.ndarray:
    """Permutation sending index of x to index of -x mod d."""
    pts = phase_points(d, n)
    neg = (-pts) % d
    weights = d ** np.arange(2 * n - 1, -1, -1, dtype=np.int64)
    perm = neg @ weights
    perm.flags.writeable = False
    return perm


@lru_cache(maxsize=8)
def weyl_basis(d: int, n: int) -> np.ndarray:
    """Stacked w(x) for all phase points x, aligned with phase_points."""
    pts = phase_points(d, n)
    D = d**n
    out = np.empty((len(pts), D, D), dtype=complex)
    for i, label in enumerate(pts):
        out[i] = weyl_op(d, n, label[:n], label[n:])
    out.flags.writeable = False
    return out


@dataclass(frozen=True)
class CharFunction:
    """Dense characteristic table over the phase space of an (d, n) system."""

    d: int
    n: int
    values: np.ndarray

    def __post_init__(self):
        if self.values.shape != (self.d ** (2 * self.n),):
            raise ValueError("characteristic table has wrong length")

    def at(self, label) -> complex:
        return complex(self.values[point_index(label, self.d)])


def char_table(M: np.ndarray, d: int, n: int) -> np.ndarray:
    """Xi_M(x) = Tr[M w(-x)] for every phase point x."""
    W = weyl_basis(d, n)
    traces = np.einsum("xab,ba->x", W, M)
    return traces[neg_perm(d, n)]


def char_function(rho) -> CharFunction:
    """Characteristic function of a density matrix (or any (d, n, mat) holder)."""
    return CharFunction(rho.d, rho.n, char_table(rho.mat, rho.d, rho.n))


def inverse_char(table: CharFunction) -> np.ndarray:
    """(1/d^n) sum_x Xi(x) w(x); left inverse of char_function."""
    W = weyl_basis(table.d, table.n)
    return np.einsum("x,xab->ab", table.values, W) / table.d**table.n


def pauli_rank(rho) -> int:
    """Size of the characteristic-function support."""
    values = char_function(rho).values
    return int(np.sum(np.abs(values) > SUPPORT_TOL))


def is_clifford(U: np.ndarray, d: int, n: int, tol: float = CLIFFORD_TOL) -> bool:
    """True iff U maps every Weyl generator to a phase times a Weyl operator.

    Checking the 2n generators suffices by the group structure.
    """
    D = d**n
    if U.shape != (D, D):
        raise ValueError(f"U has shape {U.shape}, expected {(D, D)}")
    if np.max(np.abs(U @ U.conj().T - np.eye(D))) > UNITARY_TOL:
        raise NotUnitary("U is not unitary within 1e-10")
    for k in range(n):
        e = np.zeros(n, dtype=np.int64)
        e[k] = 1
        zero = np.zeros(n, dtype=np.int64)
        for p, q in ((e, zero), (zero, e)):
            B = U @ weyl_op(d, n, p, q) @ U.conj().T
            coeffs = np.abs(char_table(B, d, n)) / D
            top = np.max(coeffs)
            rest = np.partition(coeffs, -2)[-2]
            if abs(top - 1.0) > tol or rest > tol:
                return False
    return True


def symplectic_form(x: np.ndarray, y: np.ndarray, d: int) -> int:
    """p_x . q_y - q_x . p_y mod d for length-2n labels x, y."""
    n = len(x) // 2
    return int((x[:n] @ y[n:] - x[n:] @ y[:n]) % d)
