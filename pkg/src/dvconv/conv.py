"""The quantum convolution: key unitary, state convolution, duality,
beam-splitter/amplifier specializations, minimal-output-entropy partners,
and Holevo capacity bounds.

The matrix path (build the key unitary, conjugate, partial trace) is the
primary implementation; the characteristic-side product is an independent
cross-check.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import (
    CovarianceViolation,
    DimensionMismatch,
    InvalidGroup,
    UnsupportedDimension,
)
from .entropy import renyi_entropy
from .linalg import partial_trace_B
from .magic import mean_state
from .states import DensityMatrix, StabilizerGroup
from .weyl import CharFunction, phase_points, weyl_op
from .zmod import GMatrix, find_amplifier_params, find_beam_splitter_params, \
    gmatrix_new, is_prime, mod_inverse

AVG_TOL = 1e-9


@dataclass(frozen=True)
class ConvolutionSpec:
    """A (d, n) system together with a positive invertible parameter matrix."""

    d: int
    n: int
    G: GMatrix
    _unitary_cache: dict = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        if self.d == 2 or not is_prime(self.d):
            raise UnsupportedDimension(
                "convolution needs an odd prime d; no positive invertible "
                "parameter matrix exists mod 2"
            )
        if self.G.d != self.d:
            raise DimensionMismatch("G modulus differs from spec d")

    @property
    def N(self) -> int:
        return self.G.N

    def key_unitary(self) -> np.ndarray:
        if "U" not in self._unitary_cache:
            self._unitary_cache["U"] = key_unitary(self)
        return self._unitary_cache["U"]


def _require_odd_prime(d: int) -> None:
    if d == 2 or not is_prime(d):
        raise UnsupportedDimension(
            "convolution needs an odd prime d; no positive invertible "
            "parameter matrix exists mod 2"
        )


def default_spec(d: int, n: int) -> ConvolutionSpec:
    """The canonical positive invertible choice G = [1, 1; 1, d-1]."""
    _require_odd_prime(d)
    return ConvolutionSpec(d, n, gmatrix_new((1, 1, 1, d - 1), d))


def beam_splitter_spec(d: int, n: int) -> ConvolutionSpec:
    """G = [s, t; t, -s] with the smallest s^2 + t^2 = 1 mod d pair."""
    s, t = find_beam_splitter_params(d)
    return ConvolutionSpec(d, n, gmatrix_new((s, t, t, -s), d))


def amplifier_spec(d: int, n: int) -> ConvolutionSpec:
    """G = [l, -m; -m, l] with the smallest l^2 - m^2 = 1 mod d pair."""
    l, m = find_amplifier_params(d)
    return ConvolutionSpec(d, n, gmatrix_new((l, -m, -m, l), d))


def key_unitary(spec: ConvolutionSpec) -> np.ndarray:
    """Permutation on the 2n-qudit basis: |i, j> -> |(G^-1)^T (i, j)> per wire."""
    d, n, g = spec.d, spec.n, spec.G
    N = g.N
    D = d**n
    idx = np.arange(D * D)
    # decode |i, j>: first n digits i, last n digits j
    full_radix = d ** np.arange(2 * n - 1, -1, -1, dtype=np.int64)
    digits = (idx[:, None] // full_radix[None, :]) % d
    i_dig, j_dig = digits[:, :n], digits[:, n:]
    i_new = (N * g.g11 * i_dig - N * g.g10 * j_dig) % d
    j_new = (-N * g.g01 * i_dig + N * g.g00 * j_dig) % d
    new_idx = np.concatenate([i_new, j_new], axis=1) @ full_radix
    U = np.zeros((D * D, D * D), dtype=complex)
    U[new_idx, idx] = 1.0
    return U


def _check_pair(rho: DensityMatrix, sigma: DensityMatrix, spec: ConvolutionSpec):
    if (rho.d, rho.n) != (spec.d, spec.n) or (sigma.d, sigma.n) != (spec.d, spec.n):
        raise DimensionMismatch("states do not match the convolution spec")


def convolve(rho: DensityMatrix, sigma: DensityMatrix,
             spec: ConvolutionSpec) -> DensityMatrix:
    """rho boxtimes sigma = Tr_B[U (rho (x) sigma) U^dag]."""
    _check_pair(rho, sigma, spec)
    U = spec.key_unitary()
    joint = U @ np.kron(rho.mat, sigma.mat) @ U.conj().T
    out = partial_trace_B(joint, rho.dim, sigma.dim)
    return DensityMatrix(spec.d, spec.n, (out + out.conj().T) / 2)


def convolve_characteristic(t_rho: CharFunction, t_sigma: CharFunction,
                            spec: ConvolutionSpec) -> CharFunction:
    """Xi_out(p, q) = Xi_rho(N g11 p, g00 q) Xi_sigma(-N g10 p, g01 q)."""
    if (t_rho.d, t_rho.n) != (spec.d, spec.n) or (t_sigma.d, t_sigma.n) != (spec.d, spec.n):
        raise DimensionMismatch("tables do not match the convolution spec")
    d, n, g = spec.d, spec.n, spec.G
    N = g.N
    pts = phase_points(d, n)
    p, q = pts[:, :n], pts[:, n:]
    full_radix = d ** np.arange(2 * n - 1, -1, -1, dtype=np.int64)

    def table_index(pp, qq):
        return np.concatenate([pp % d, qq % d], axis=1) @ full_radix

    a = t_rho.values[table_index(N * g.g11 * p, g.g00 * q)]
    b = t_sigma.values[table_index(-N * g.g10 * p, g.g01 * q)]
    return CharFunction(d, n, a * b)


@dataclass(frozen=True)
class ConvolutionChannel:
    """E_sigma(rho) = rho boxtimes sigma for a fixed second input."""

    spec: ConvolutionSpec
    sigma: DensityMatrix

    def __post_init__(self):
        if (self.sigma.d, self.sigma.n) != (self.spec.d, self.spec.n):
            raise DimensionMismatch("sigma does not match the convolution spec")


def channel_apply(chan: ConvolutionChannel, rho: DensityMatrix) -> DensityMatrix:
    return convolve(rho, chan.sigma, chan.spec)


def partner_stabilizer_group(s2: StabilizerGroup,
                             spec: ConvolutionSpec) -> StabilizerGroup:
    """Labels (x, y) -> (-g10^-1 g11 x, g01^-1 g00 y), zero phases.

    This is the input group pairing that makes the convolution of the two
    pure stabilizer states pure again.
    """
    d, n, g = spec.d, spec.n, spec.G
    if s2.r != n:
        raise InvalidGroup("partner construction needs a maximal group (r = n)")
    cp = (-mod_inverse(g.g10, d) * g.g11) % d
    cq = (mod_inverse(g.g01, d) * g.g00) % d
    gens = []
    for label in s2.generators:
        v = np.asarray(label, dtype=np.int64)
        gens.append(tuple(int(x) for x in
                          np.concatenate([(cp * v[:n]) % d, (cq * v[n:]) % d])))
    return StabilizerGroup(d, n, tuple(gens), (0,) * n)


def holevo_bounds(chan: ConvolutionChannel) -> tuple[float, float]:
    """(n log2 d - H(M(sigma)), n log2 d - H(sigma)) sandwiching the capacity."""
    cap = chan.spec.n * np.log2(chan.spec.d)
    lower = cap - renyi_entropy(mean_state(chan.sigma), 1)
    upper = cap - renyi_entropy(chan.sigma, 1)
    return float(lower), float(upper)


def holevo_weyl_ensemble(chan: ConvolutionChannel, rho0: DensityMatrix) -> float:
    """Holevo quantity of the uniform Weyl orbit of rho0: a certified lower bound.

    Verifies that the average output is maximally mixed and that all orbit
    outputs share one entropy (channel covariance), then returns
    n log2 d - H(E(rho0)).
    """
    spec = chan.spec
    d, n = spec.d, spec.n
    if (rho0.d, rho0.n) != (d, n):
        raise DimensionMismatch("rho0 does not match the channel")
    D = d**n
    pts = phase_points(d, n)
    avg = np.zeros((D, D), dtype=complex)
    base_H = None
    for label in pts:
        W = weyl_op(d, n, label[:n], label[n:])
        displaced = DensityMatrix(d, n, W @ rho0.mat @ W.conj().T)
        out = channel_apply(chan, displaced)
        avg += out.mat
        H = renyi_entropy(out, 1)
        if base_H is None:
            base_H = H
        elif abs(H - base_H) > AVG_TOL:
            raise CovarianceViolation(
                f"orbit output entropies differ by {abs(H - base_H):.3e}"
            )
    avg /= len(pts)
    dev = np.max(np.abs(avg - np.eye(D) / D))
    if dev > AVG_TOL:
        raise CovarianceViolation(f"average output deviates from I/d^n by {dev:.3e}")
    return float(n * np.log2(d) - base_H)
