"""Mean-state projection, magic gap, mean-value vector, zero-mean
normalization, and Clifford+T circuit generation.

Logarithms are base 2 throughout (bits), matching the entropy module.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import NoSolution, PhaseNotRoot
from .linalg import SUPPORT_TOL
from .states import UNIT_TOL, DensityMatrix, StabilizerGroup, is_msps
from .weyl import CharFunction, char_function, inverse_char, weyl_op, xi
from .zmod import mod_inverse, solve_mod_linear

PHASE_TOL = 1e-8


def mean_state(rho: DensityMatrix) -> DensityMatrix:
    """Keep unit-modulus characteristic values, zero the rest, invert.

    Unit values are renormalized to exact modulus 1 so the projection is
    idempotent to machine precision.
    """
    table = char_function(rho)
    mags = np.abs(table.values)
    unit = np.abs(mags - 1.0) <= UNIT_TOL
    values = np.where(unit, table.values / np.where(unit, mags, 1.0), 0.0)
    M = inverse_char(CharFunction(rho.d, rho.n, values))
    return DensityMatrix(rho.d, rho.n, (M + M.conj().T) / 2)


def _gap_candidates(rho: DensityMatrix) -> np.ndarray:
    """|Xi| over support points that are not unit modulus."""
    mags = np.abs(char_function(rho).values)
    mask = (mags > SUPPORT_TOL) & (np.abs(mags - 1.0) > UNIT_TOL)
    return mags[mask]


def magic_gap(rho: DensityMatrix) -> float:
    """1 - second-largest characteristic modulus on the support; 0 for MSPS."""
    cand = _gap_candidates(rho)
    if cand.size == 0:
        return 0.0
    return float(1.0 - np.max(cand))


def log_magic_gap(rho: DensityMatrix) -> float:
    """-log2 of the second-largest characteristic modulus; 0 for MSPS."""
    cand = _gap_candidates(rho)
    if cand.size == 0:
        return 0.0
    return float(-np.log2(np.max(cand)))


def magic_gap_purity_bound(rho: DensityMatrix) -> dict:
    """Reported-only upper bound on MG from purity and Pauli rank.

    K is taken as the size of the unit-modulus support (the group of the
    mean state).  Returned for reporting, never asserted.
    """
    from .weyl import pauli_rank

    mags = np.abs(char_function(rho).values)
    K = int(np.sum(np.abs(mags - 1.0) <= UNIT_TOL))
    R = pauli_rank(rho)
    num = rho.dim * rho.purity() - K
    den = R - K
    bound = 1.0 - float(np.sqrt(max(num, 0.0) / den)) if den > 0 else 0.0
    mg = magic_gap(rho)
    return {"mg": mg, "bound": bound, "K": K, "pauli_rank": R,
            "satisfied": den <= 0 or mg <= bound + 1e-9}


@dataclass(frozen=True)
class MeanVector:
    """Phase exponents k_i of the mean state on its canonical generators."""

    group: StabilizerGroup

    @property
    def k(self) -> tuple[int, ...]:
        return self.group.phases


def mean_vector(rho: DensityMatrix) -> MeanVector:
    """Generators of the mean state's group with Xi_rho(p_i, q_i) = xi^{k_i}."""
    ok, group = is_msps(mean_state(rho))
    if not ok or group is None:
        raise PhaseNotRoot("mean state failed MSPS detection")
    table = char_function(rho)
    w = xi(rho.d)
    for g, k in zip(group.generators, group.phases):
        if abs(table.at(g) - w**k) > PHASE_TOL:
            raise PhaseNotRoot(
                f"support value at {g} deviates from a {rho.d}-th root of unity"
            )
    return MeanVector(group)


def make_zero_mean(rho: DensityMatrix) -> tuple[tuple[int, ...], DensityMatrix]:
    """Weyl displacement (a, b) with w(a,b) rho w(a,b)^dag zero-mean.

    Conjugation by w(a, b) shifts each phase exponent by a.q_i - b.p_i, so
    the displacement solves a linear system over Z_d.
    """
    d, n = rho.d, rho.n
    mv = mean_vector(rho)
    gens, ks = mv.group.generators, mv.group.phases
    if not gens:
        return tuple([0] * (2 * n)), rho
    rows = []
    for g in gens:
        g = np.asarray(g, dtype=np.int64)
        rows.append(np.concatenate([g[n:], (-g[:n]) % d]))
    b_vec = np.array([(-k) % d for k in ks], dtype=np.int64)
    try:
        sol = solve_mod_linear(np.stack(rows), b_vec, d)
    except NoSolution as exc:  # consistent for valid inputs; defensive only
        raise NoSolution("zero-mean displacement system inconsistent") from exc
    a, b = sol[:n], sol[n:]
    W = weyl_op(d, n, a, b)
    out = DensityMatrix(d, n, W @ rho.mat @ W.conj().T)
    return tuple(int(v) for v in sol), out


# ---------------------------------------------------------------------------
# Clifford words and Clifford+T circuits
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def _fourier_gate(d: int) -> np.ndarray:
    j, k = np.indices((d, d))
    F = xi(d) ** (j * k) / np.sqrt(d)
    F.flags.writeable = False
    return F


@lru_cache(maxsize=None)
def _phase_gate(d: int) -> np.ndarray:
    if d == 2:
        P = np.diag([1.0, 1j])
    else:
        k = np.arange(d)
        P = np.diag(xi(d) ** (mod_inverse(2, d) * k * k))
    P.flags.writeable = False
    return P


def _sum_gate(d: int, n: int, ctrl: int, tgt: int) -> np.ndarray:
    """|i, j> -> |i, i+j> on wires (ctrl, tgt); CNOT at d=2."""
    D = d**n
    U = np.zeros((D, D), dtype=complex)
    radix = d ** np.arange(n - 1, -1, -1, dtype=np.int64)
    for idx in range(D):
        digits = (idx // radix) % d
        out = digits.copy()
        out[tgt] = (digits[tgt] + digits[ctrl]) % d
        U[int(out @ radix), idx] = 1.0
    return U


def _embed(gate: np.ndarray, d: int, n: int, wire: int) -> np.ndarray:
    out = np.eye(1, dtype=complex)
    for k in range(n):
        out = np.kron(out, gate if k == wire else np.eye(d, dtype=complex))
    return out


def random_clifford(rng: np.random.Generator, d: int, n: int, length: int = 8) -> np.ndarray:
    """Random word over Fourier, phase, and SUM gates (H, S, CNOT at d=2)."""
    D = d**n
    U = np.eye(D, dtype=complex)
    for _ in range(length):
        kind = rng.integers(0, 3 if n > 1 else 2)
        if kind == 0:
            U = _embed(_fourier_gate(d), d, n, int(rng.integers(n))) @ U
        elif kind == 1:
            U = _embed(_phase_gate(d), d, n, int(rng.integers(n))) @ U
        else:
            ctrl, tgt = rng.choice(n, size=2, replace=False)
            U = _sum_gate(d, n, int(ctrl), int(tgt)) @ U
    # random Weyl displacement for phase-space coverage
    p = rng.integers(0, d, size=n)
    q = rng.integers(0, d, size=n)
    return weyl_op(d, n, p, q) @ U


T_GATE = np.diag([1.0, np.exp(1j * np.pi / 4)])


def clifford_t_circuit(seed: int, n: int, n_t: int) -> np.ndarray:
    """Alternating random Clifford layers and T gates on random wires (d=2).

    Exactly n_t T gates; deterministic per seed.
    """
    if n not in (1, 2):
        raise ValueError("clifford_t_circuit supports n in {1, 2}")
    rng = np.random.default_rng(seed)
    U = random_clifford(rng, 2, n)
    for _ in range(n_t):
        U = _embed(T_GATE, 2, n, int(rng.integers(n))) @ U
        U = random_clifford(rng, 2, n) @ U
    return U
