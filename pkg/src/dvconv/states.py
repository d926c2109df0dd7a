"""Density matrices, stabilizer groups, MSPS construction and detection.

MSPS detection works entirely in characteristic-function space: the table
of an MSPS is a character supported on a symplectically-isotropic subgroup
of the phase space, with unit modulus on the support and zero elsewhere.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import InvalidGroup, InvalidState, UnsupportedScale
from .linalg import SUPPORT_TOL, herm_eig
from .weyl import (
    CharFunction,
    char_function,
    phase_points,
    point_index,
    symplectic_form,
    weyl_op,
    xi,
)
from .zmod import rank_mod, rref_mod

STATE_TOL = 1e-10
#: |Xi| within this of 1 counts as unit modulus
UNIT_TOL = 1e-9


@dataclass(frozen=True)
class DensityMatrix:
    """Dense d^n x d^n state with validated invariants."""

    d: int
    n: int
    mat: np.ndarray = field(repr=False)

    def __post_init__(self):
        D = self.d**self.n
        if self.mat.shape != (D, D):
            raise InvalidState(f"matrix is {self.mat.shape}, expected {(D, D)}")
        herm_dev = np.max(np.abs(self.mat - self.mat.conj().T))
        if herm_dev > STATE_TOL:
            raise InvalidState(f"Hermiticity deviation {herm_dev:.3e}")
        tr_dev = abs(np.trace(self.mat) - 1.0)
        if tr_dev > STATE_TOL:
            raise InvalidState(f"trace deviation {tr_dev:.3e}")
        lam = np.linalg.eigvalsh((self.mat + self.mat.conj().T) / 2)
        if lam[0] < -STATE_TOL:
            raise InvalidState(f"negative eigenvalue {lam[0]:.3e}")
        m = np.ascontiguousarray(self.mat)
        m.flags.writeable = False
        object.__setattr__(self, "mat", m)

    @property
    def dim(self) -> int:
        return self.d**self.n

    def eigenvalues(self) -> np.ndarray:
        vals, _ = herm_eig(self.mat)
        return np.clip(vals, 0.0, None)

    def purity(self) -> float:
        return float(np.real(np.trace(self.mat @ self.mat)))


def maximally_mixed(d: int, n: int) -> DensityMatrix:
    D = d**n
    return DensityMatrix(d, n, np.eye(D, dtype=complex) / D)


def ket_state(d: int, n: int, digits) -> DensityMatrix:
    """|digits><digits| in the computational basis."""
    digits = np.asarray(digits, dtype=np.int64).reshape(n) % d
    idx = 0
    for dig in digits:
        idx = idx * d + int(dig)
    psi = np.zeros(d**n, dtype=complex)
    psi[idx] = 1.0
    return DensityMatrix(d, n, np.outer(psi, psi.conj()))


def pure_state(d: int, n: int, psi: np.ndarray) -> DensityMatrix:
    psi = np.asarray(psi, dtype=complex).reshape(-1)
    psi = psi / np.linalg.norm(psi)
    return DensityMatrix(d, n, np.outer(psi, psi.conj()))


def t_state() -> DensityMatrix:
    """Qubit T state (I + (X+Y)/sqrt 2)/2."""
    X = np.array([[0, 1], [1, 0]], dtype=complex)
    Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
    return DensityMatrix(2, 1, (np.eye(2) + (X + Y) / np.sqrt(2)) / 2)


def random_density(seed: int, d: int, n: int, rank: int | None = None) -> DensityMatrix:
    """Ginibre state: A A^dag / Tr with a d^n x rank complex-Gaussian factor."""
    D = d**n
    if rank is None:
        rank = D
    if not 1 <= rank <= D:
        raise ValueError(f"rank must be in [1, {D}]")
    rng = np.random.default_rng(seed)
    A = rng.standard_normal((D, rank)) + 1j * rng.standard_normal((D, rank))
    M = A @ A.conj().T
    return DensityMatrix(d, n, M / np.trace(M).real)


@dataclass(frozen=True)
class StabilizerGroup:
    """r <= n independent commuting Weyl labels plus phase exponents in Z_d^r.

    Each generator is a length-2n label (p | q); phases[i] = x_i satisfies
    Xi_rho(p_i, q_i) = xi^{x_i} for the MSPS built from the group.
    """

    d: int
    n: int
    generators: tuple[tuple[int, ...], ...]
    phases: tuple[int, ...]

    def __post_init__(self):
        if len(self.generators) != len(self.phases):
            raise InvalidGroup("generator/phase count mismatch")
        if len(self.generators) > self.n:
            raise InvalidGroup("more generators than qudits")
        gens = [np.asarray(g, dtype=np.int64) % self.d for g in self.generators]
        for g in gens:
            if g.shape != (2 * self.n,):
                raise InvalidGroup("generator label has wrong length")
        for i in range(len(gens)):
            for j in range(i + 1, len(gens)):
                if symplectic_form(gens[i], gens[j], self.d) != 0:
                    raise InvalidGroup(f"generators {i}, {j} do not commute")
        if gens and rank_mod(np.stack(gens), self.d) != len(gens):
            raise InvalidGroup("generators are linearly dependent mod d")

    @property
    def r(self) -> int:
        return len(self.generators)


def msps_from_group(group: StabilizerGroup) -> DensityMatrix:
    """rho = (1/d^{n-r}) prod_i E_k [xi^{x_i} w(p_i, q_i)]^k."""
    d, n = group.d, group.n
    D = d**n
    P = np.eye(D, dtype=complex)
    w = xi(d)
    for label, x in zip(group.generators, group.phases):
        g = np.asarray(label, dtype=np.int64)
        W = weyl_op(d, n, g[:n], g[n:])
        avg = np.zeros((D, D), dtype=complex)
        term = np.eye(D, dtype=complex)
        for k in range(d):
            avg += (w**x) ** k * term
            term = term @ W
        P = P @ (avg / d)
    scale = d ** (n - group.r)
    tr = np.trace(P).real
    if abs(tr - scale) > 1e-8 * scale:
        raise InvalidGroup(f"projector trace {tr:.6f}, expected {scale}")
    return DensityMatrix(d, n, (P + P.conj().T) / (2 * scale))


def _recover_group(table: CharFunction, support_idx: np.ndarray) -> StabilizerGroup:
    """Canonical (row-echelon) generators and phases from a unit support."""
    d, n = table.d, table.n
    pts = phase_points(d, n)
    labels = pts[support_idx]
    R, pivots = rref_mod(labels, d) if len(labels) else (np.zeros((0, 2 * n)), [])
    gens = [tuple(int(v) for v in R[i]) for i in range(len(pivots))]
    phases = []
    for g in gens:
        val = table.values[point_index(g, d)]
        k = int(round(d * (np.angle(val) / (2 * np.pi)))) % d
        phases.append(k)
    return StabilizerGroup(d, n, tuple(gens), tuple(phases))


def is_msps(rho: DensityMatrix) -> tuple[bool, StabilizerGroup | None]:
    """Characteristic-space MSPS test; returns the recovered group on success.

    Conditions: every |Xi| in {0, 1}; unit support closed under addition;
    values on the support form a character; support labels commute
    symplectically.
    """
    d, n = rho.d, rho.n
    table = char_function(rho)
    mags = np.abs(table.values)
    unit = np.abs(mags - 1.0) <= UNIT_TOL
    zero = mags <= UNIT_TOL
    if not np.all(unit | zero):
        return False, None
    support_idx = np.flatnonzero(unit)
    pts = phase_points(d, n)
    weights = d ** np.arange(2 * n - 1, -1, -1, dtype=np.int64)
    support_set = set(int(i) for i in support_idx)
    labels = pts[support_idx]
    vals = table.values[support_idx]
    for i in range(len(labels)):
        for j in range(len(labels)):
            s = (labels[i] + labels[j]) % d
            s_idx = int(s @ weights)
            if s_idx not in support_set:
                return False, None
            if abs(table.values[s_idx] - vals[i] * vals[j]) > UNIT_TOL:
                return False, None
            if symplectic_form(labels[i], labels[j], d) != 0:
                return False, None
    group = _recover_group(table, support_idx)
    if d**group.r != len(support_idx):
        return False, None
    return True, group


def enumerate_msps(d: int, n: int = 1) -> list[DensityMatrix]:
    """All d^2 + d + 1 MSPS of a single qudit, d in {2, 3}."""
    if n != 1 or d not in (2, 3):
        raise UnsupportedScale("enumeration supported only at n=1, d in {2, 3}")
    return enumerate_pure_stabilizers(d, n) + [maximally_mixed(d, n)]


def enumerate_pure_stabilizers(d: int, n: int = 1) -> list[DensityMatrix]:
    """The d(d+1) single-qudit pure stabilizer states, d in {2, 3, 7}."""
    if n != 1 or d not in (2, 3, 7):
        raise UnsupportedScale("enumeration supported only at n=1, d in {2, 3, 7}")
    out = []
    for label in _line_generators(d):
        for x in range(d):
            group = StabilizerGroup(d, 1, (label,), (x,))
            out.append(msps_from_group(group))
    return out


def _line_generators(d: int) -> list[tuple[int, int]]:
    """Canonical generator of each of the d+1 lines through the origin."""
    return [(1, b) for b in range(d)] + [(0, 1)]


# ---------------------------------------------------------------------------
# JSON state schema (shared with the CLI)
# ---------------------------------------------------------------------------

PRESETS = ("maximally-mixed", "zero-ket", "t-state")


def state_to_json(rho: DensityMatrix) -> dict:
    return {
        "d": rho.d,
        "n": rho.n,
        "kind": "dense",
        "re": [[float(v) for v in row] for row in rho.mat.real],
        "im": [[float(v) for v in row] for row in rho.mat.imag],
    }


def char_to_json(table: CharFunction) -> dict:
    return {
        "d": table.d,
        "n": table.n,
        "kind": "char",
        "re": [float(v) for v in table.values.real],
        "im": [float(v) for v in table.values.imag],
    }


def state_from_json(obj: dict) -> DensityMatrix:
    from .errors import ParseError
    from .weyl import inverse_char

    try:
        d, n, kind = int(obj["d"]), int(obj["n"]), obj["kind"]
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"malformed state object: {exc}") from exc
    if kind == "dense":
        mat = np.asarray(obj["re"], dtype=float) + 1j * np.asarray(obj["im"], dtype=float)
        return DensityMatrix(d, n, mat)
    if kind == "char":
        values = np.asarray(obj["re"], dtype=float) + 1j * np.asarray(obj["im"], dtype=float)
        return DensityMatrix(d, n, inverse_char(CharFunction(d, n, values)))
    if kind == "msps":
        group = StabilizerGroup(
            d, n,
            tuple(tuple(int(v) for v in g) for g in obj["generators"]),
            tuple(int(x) for x in obj["phases"]),
        )
        return msps_from_group(group)
    if kind == "preset":
        return preset_state(obj["name"], d, n)
    raise ParseError(f"unknown state kind {kind!r}")


def preset_state(name: str, d: int, n: int) -> DensityMatrix:
    from .errors import ParseError

    if name == "maximally-mixed":
        return maximally_mixed(d, n)
    if name == "zero-ket":
        return ket_state(d, n, [0] * n)
    if name == "t-state":
        if (d, n) != (2, 1):
            raise ParseError("t-state preset requires d=2, n=1")
        return t_state()
    raise ParseError(f"unknown preset {name!r}")
