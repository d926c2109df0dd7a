"""Generalized Renyi entropies, sandwiched Renyi relative entropy, Umegaki
relative entropy, and divergence-based quantum Fisher information.

All entropies are in bits (log base 2); infinities are returned as values,
not raised.  The generalized entropy is sgn(alpha)/(1-alpha) log2 sum lam^alpha
with the alpha in {0, 1, +-inf} cases routed to their limits.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import RankDeficient
from .linalg import SUPPORT_TOL, herm_eig
from .states import DensityMatrix, maximally_mixed
from .weyl import xi

#: below this minimum eigenvalue a state counts as rank deficient
FULL_RANK_TOL = 1e-12

INF = math.inf


def renyi_entropy(rho: DensityMatrix, alpha: float, strict: bool = False) -> float:
    """Generalized Renyi entropy H_alpha in bits.

    alpha < 0 on a rank-deficient state returns +inf by convention
    (RankDeficient when strict=True).
    """
    lam = rho.eigenvalues()
    if alpha == 1:
        pos = lam[lam > FULL_RANK_TOL]
        return float(-np.sum(pos * np.log2(pos)))
    if alpha == 0:
        return float(np.log2(np.sum(lam > SUPPORT_TOL)))
    if alpha == INF:
        return float(-np.log2(lam[0]))
    if alpha < 0:
        if lam[-1] <= FULL_RANK_TOL:
            if strict:
                raise RankDeficient("negative-alpha entropy needs full rank")
            return INF
        if alpha == -INF:
            return float(np.log2(lam[-1]))
        return float(-np.log2(np.sum(lam**alpha)) / (1 - alpha))
    pos = lam[lam > 0]
    return float(np.log2(np.sum(pos**alpha)) / (1 - alpha))


def _support_projector(sigma: DensityMatrix) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    vals, vecs = herm_eig(sigma.mat)
    keep = vals > SUPPORT_TOL
    return vals[keep], vecs[:, keep], vecs[:, ~keep]


def _outside_support_weight(rho: DensityMatrix, kernel_vecs: np.ndarray) -> float:
    if kernel_vecs.shape[1] == 0:
        return 0.0
    return float(np.real(np.trace(kernel_vecs.conj().T @ rho.mat @ kernel_vecs)))


def relative_entropy(rho: DensityMatrix, sigma: DensityMatrix) -> float:
    """Umegaki D(rho||sigma) in bits; +inf off the support of sigma."""
    svals, svecs, skern = _support_projector(sigma)
    if _outside_support_weight(rho, skern) > SUPPORT_TOL:
        return INF
    rvals, rvecs = herm_eig(rho.mat)
    rpos = rvals > FULL_RANK_TOL
    s1 = float(np.sum(rvals[rpos] * np.log2(rvals[rpos])))
    log_sigma = (svecs * np.log2(svals)) @ svecs.conj().T
    s2 = float(np.real(np.trace(rho.mat @ log_sigma)))
    return s1 - s2


def sandwiched_relative_entropy(rho: DensityMatrix, sigma: DensityMatrix,
                                alpha: float) -> float:
    """Sandwiched Renyi divergence D_alpha, alpha in [1/2, inf]."""
    if alpha == 1:
        return relative_entropy(rho, sigma)
    if not (0.5 <= alpha):
        raise ValueError("alpha must be in [1/2, inf]")
    svals, svecs, skern = _support_projector(sigma)
    if alpha > 1 and _outside_support_weight(rho, skern) > SUPPORT_TOL:
        return INF
    if alpha == INF:
        inv_sqrt = (svecs * svals**-0.5) @ svecs.conj().T
        mid = inv_sqrt @ rho.mat @ inv_sqrt
        vals, _ = herm_eig((mid + mid.conj().T) / 2)
        return float(np.log2(vals[0]))
    e = (1 - alpha) / (2 * alpha)
    sig_e = (svecs * svals**e) @ svecs.conj().T
    mid = sig_e @ rho.mat @ sig_e
    vals, _ = herm_eig((mid + mid.conj().T) / 2)
    vals = np.clip(vals, 0.0, None)
    return float(np.log2(np.sum(vals**alpha)) / (alpha - 1))


# ---------------------------------------------------------------------------
# Divergence-based quantum Fisher information
# ---------------------------------------------------------------------------


def fisher_information(rho: DensityMatrix, H: np.ndarray, eps: float = 0.0) -> float:
    """J(rho; H) = Tr rho [H, [H, log rho]], log base 2.

    Requires full rank; eps > 0 mixes in eps * I/d^n first.
    """
    if eps > 0:
        mixed = (1 - eps) * rho.mat + eps * np.eye(rho.dim) / rho.dim
        rho = DensityMatrix(rho.d, rho.n, mixed)
    vals, vecs = herm_eig(rho.mat)
    if vals[-1] <= FULL_RANK_TOL:
        raise RankDeficient("Fisher information needs a full-rank state")
    L = (vecs * np.log2(vals)) @ vecs.conj().T
    comm = H @ (H @ L - L @ H) - (H @ L - L @ H) @ H
    return float(np.real(np.trace(rho.mat @ comm)))


def _basis_projectors(d: int) -> tuple[list[np.ndarray], list[np.ndarray]]:
    """Eigenprojectors |j><j| of Z (computational) and X (Fourier) bases."""
    z_projs = []
    x_projs = []
    w = xi(d)
    for j in range(d):
        ez = np.zeros(d, dtype=complex)
        ez[j] = 1.0
        z_projs.append(np.outer(ez, ez.conj()))
        ex = w ** (-j * np.arange(d)) / np.sqrt(d)
        x_projs.append(np.outer(ex, ex.conj()))
    return z_projs, x_projs


def total_fisher(rho: DensityMatrix, eps: float = 0.0) -> float:
    """Sum of J(rho; H) over every wire and every X/Z eigenprojector."""
    d, n = rho.d, rho.n
    z_projs, x_projs = _basis_projectors(d)
    total = 0.0
    for k in range(n):
        for proj in z_projs + x_projs:
            H = np.eye(1, dtype=complex)
            for m in range(n):
                H = np.kron(H, proj if m == k else np.eye(d, dtype=complex))
            total += fisher_information(rho, H, eps=eps)
    return total


def fisher_fd_oracle(rho: DensityMatrix, H: np.ndarray, step: float = 1e-3) -> float:
    """Finite-difference check: second derivative of D(rho || e^{i t H} rho e^{-i t H})."""
    def div(t: float) -> float:
        U = _expm_herm(1j * t * H)
        rotated = DensityMatrix(rho.d, rho.n, U @ rho.mat @ U.conj().T)
        return relative_entropy(rho, rotated)

    return (div(step) + div(-step)) / step**2


def _expm_herm(A: np.ndarray) -> np.ndarray:
    """exp(A) for anti-Hermitian A = i t H via eigendecomposition of H."""
    vals, vecs = np.linalg.eigh(-1j * A)
    return (vecs * np.exp(1j * vals)) @ vecs.conj().T
