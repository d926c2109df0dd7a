"""Exact arithmetic over Z_d (d prime) and modular linear algebra.

All elements are canonical residues in [0, d-1]; every operation reduces
eagerly so outputs are bit-exact across platforms.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import NoSolution, NotInvertible, NotPositive, ZeroElement


def is_prime(d: int) -> bool:
    """Deterministic trial division; d stays small throughout."""
    if d < 2:
        return False
    f = 2
    while f * f <= d:
        if d % f == 0:
            return False
        f += 1
    return True


@dataclass(frozen=True)
class PrimeModulus:
    """A validated prime local dimension.

    d = 2 is valid for characteristic-function and magic work but admits
    no positive invertible parameter matrix, so convolution rejects it.
    """

    d: int

    def __post_init__(self):
        if not is_prime(self.d):
            raise ValueError(f"d={self.d} is not prime")

    @property
    def supports_convolution(self) -> bool:
        return self.d != 2


def mod_inverse(a: int, d: int) -> int:
    """Inverse of a in Z_d (d prime)."""
    a = a % d
    if a == 0:
        raise ZeroElement(f"0 has no inverse mod {d}")
    return pow(a, d - 2, d)


def rref_mod(A: np.ndarray, d: int) -> tuple[np.ndarray, list[int]]:
    """Row-reduced echelon form of A over the field Z_d.

    Returns the reduced matrix and the list of pivot columns.
    """
    R = np.array(A, dtype=np.int64) % d
    m, n = R.shape
    pivots: list[int] = []
    row = 0
    for col in range(n):
        if row >= m:
            break
        sel = None
        for i in range(row, m):
            if R[i, col] % d != 0:
                sel = i
                break
        if sel is None:
            continue
        R[[row, sel]] = R[[sel, row]]
        R[row] = (R[row] * mod_inverse(int(R[row, col]), d)) % d
        for i in range(m):
            if i != row and R[i, col] % d != 0:
                R[i] = (R[i] - R[i, col] * R[row]) % d
        pivots.append(col)
        row += 1
    return R, pivots


def rank_mod(A: np.ndarray, d: int) -> int:
    _, pivots = rref_mod(A, d)
    return len(pivots)


def solve_mod_linear(A: np.ndarray, b: np.ndarray, d: int) -> np.ndarray:
    """One solution x of A x = b over Z_d (free variables set to 0).

    Raises NoSolution when the system is inconsistent.
    """
    A = np.atleast_2d(np.asarray(A, dtype=np.int64)) % d
    b = np.asarray(b, dtype=np.int64).reshape(-1) % d
    m, n = A.shape
    if b.shape[0] != m:
        raise ValueError("A and b have inconsistent shapes")
    aug = np.concatenate([A, b.reshape(-1, 1)], axis=1)
    R, pivots = rref_mod(aug, d)
    if n in pivots:
        raise NoSolution("inconsistent modular linear system")
    x = np.zeros(n, dtype=np.int64)
    for i, col in enumerate(pivots):
        x[col] = R[i, n]
    return x


def find_beam_splitter_params(d: int) -> tuple[int, int]:
    """Lexicographically smallest (s, t), both nonzero, with s^2+t^2 = 1 mod d.

    Solvable for every odd prime d >= 7; raises NoSolution for d in {3, 5}.
    """
    for s in range(1, d):
        for t in range(1, d):
            if (s * s + t * t) % d == 1:
                return s, t
    raise NoSolution(f"no nonzero (s, t) with s^2+t^2=1 mod {d}")


def find_amplifier_params(d: int) -> tuple[int, int]:
    """Lexicographically smallest (l, m), both nonzero, with l^2-m^2 = 1 mod d."""
    for l in range(1, d):
        for m in range(1, d):
            if (l * l - m * m) % d == 1:
                return l, m
    raise NoSolution(f"no nonzero (l, m) with l^2-m^2=1 mod {d}")


@dataclass(frozen=True)
class GMatrix:
    """Positive invertible 2x2 convolution parameter matrix over Z_d.

    Positive means no entry is 0 mod d.  N caches (det G)^{-1}.
    """

    d: int
    g00: int
    g01: int
    g10: int
    g11: int
    N: int

    @property
    def entries(self) -> tuple[int, int, int, int]:
        return self.g00, self.g01, self.g10, self.g11

    def inverse_entries(self) -> tuple[int, int, int, int]:
        """Entries of G^{-1} = N [g11, -g01; -g10, g00] mod d."""
        d, N = self.d, self.N
        return (
            (N * self.g11) % d,
            (-N * self.g01) % d,
            (-N * self.g10) % d,
            (N * self.g00) % d,
        )


def gmatrix_new(entries, d: int) -> GMatrix:
    """Validate a positive invertible G = [g00, g01; g10, g11] over Z_d."""
    g00, g01, g10, g11 = (int(g) % d for g in entries)
    if any(g == 0 for g in (g00, g01, g10, g11)):
        raise NotPositive(f"G has a zero entry mod {d}")
    det = (g00 * g11 - g01 * g10) % d
    if det == 0:
        raise NotInvertible(f"det G = 0 mod {d}")
    return GMatrix(d=d, g00=g00, g01=g01, g10=g10, g11=g11, N=mod_inverse(det, d))
