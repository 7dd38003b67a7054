"""Concurrence values and their closed-form lower/upper bounds.

Pure-state concurrence comes from the Schmidt spectrum, two-qubit mixed
states get the exact spin-flip value, and arbitrary bipartite states get
a fidelity-with-MES lower bound.  The determinant-normalized upper
bounds tie the concurrence of a channel image to the concurrence of the
evolved probe state.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch, SingularProbe, TrivialDimension
from .qlinalg import DensityMatrix, PureState, canonical_mes, state_to_matrix

_SIGMA_Y = np.array([[0.0, -1j], [1j, 0.0]])
_SPIN_FLIP = np.kron(_SIGMA_Y, _SIGMA_Y)

# Columns are the magic basis: (|00>+|11>)/sqrt2, i(|00>-|11>)/sqrt2,
# i(|01>+|10>)/sqrt2, (|01>-|10>)/sqrt2.  Maximally entangled two-qubit
# states are exactly the real unit combinations of these columns, up to
# a global phase.
_MAGIC_BASIS = np.array([
    [1.0, 1j, 0.0, 0.0],
    [0.0, 0.0, 1j, 1.0],
    [0.0, 0.0, 1j, -1.0],
    [1.0, -1j, 0.0, 0.0],
]) / np.sqrt(2.0)

_DET_FLOOR = 1e-12


@dataclass(frozen=True)
class BoundValue:
    """A bound with its raw (possibly negative) value preserved.

    ``clamped`` is the value to quote for the nonnegative quantity being
    bounded; ``raw`` keeps the information a plot of the bound needs.
    """

    raw: float
    kind: str  # "lower" | "upper" | "exact"

    @property
    def clamped(self) -> float:
        return max(0.0, self.raw)


def _prefactor(r: int) -> float:
    return np.sqrt(2.0 * r / (r - 1.0))


def concurrence_pure(psi: PureState) -> float:
    """Concurrence of a pure bipartite state from its Schmidt spectrum.

    Equals sqrt(4 sum_{i<j} s_i^2 s_j^2) for singular values s of the
    coefficient matrix; ranges over [0, sqrt(2(R-1)/R)] with
    R = min(N1, N2).
    """
    s = np.linalg.svd(state_to_matrix(psi), compute_uv=False)
    total = np.sum(s**2)
    return float(np.sqrt(max(0.0, 2.0 * (total * total - np.sum(s**4)))))


def concurrence_two_qubit_pure(psi: PureState) -> float:
    """Two-qubit pure-state concurrence 2|det(psi)| of the coefficient matrix."""
    if psi.dims != (2, 2):
        raise DimensionMismatch(f"requires a 2x2 bipartition, got {psi.dims}")
    return float(2.0 * abs(np.linalg.det(state_to_matrix(psi))))


def spin_flip_spectrum(rho: DensityMatrix) -> np.ndarray:
    """Decreasing sqrt-eigenvalues of rho rho~ with rho~ the spin-flipped state.

    Computed as the singular values of A^T (sy o sy) A for a factor
    rho = A A^dagger, which avoids taking square roots of near-zero
    eigenvalues of the non-Hermitian product rho rho~.  Eigenvalue mass
    below 1e-14 (relative) is treated as exact rank deficiency: keeping
    those columns would couple null directions of the Gram matrix and
    inject O(sqrt(eps)) noise into the two smallest spectrum entries.
    """
    if rho.dims != (2, 2):
        raise DimensionMismatch(f"requires a 2x2 bipartition, got {rho.dims}")
    w, v = np.linalg.eigh(rho.matrix)
    keep = w > 1e-14 * max(1.0, w[-1])
    factor = v[:, keep] * np.sqrt(w[keep])
    tau = factor.T @ _SPIN_FLIP @ factor
    lam = np.zeros(4)
    sv = np.linalg.svd(tau, compute_uv=False)
    lam[:sv.size] = sv
    return lam


def wootters_concurrence(rho: DensityMatrix) -> float:
    """Exact two-qubit mixed-state concurrence max(0, l1 - l2 - l3 - l4)."""
    lam = spin_flip_spectrum(rho)
    return float(max(0.0, lam[0] - lam[1] - lam[2] - lam[3]))


def fidelity_lower_bound(rho: DensityMatrix) -> BoundValue:
    """Lower bound sqrt(2R/(R-1)) (<mes|rho|mes> - 1/R) on the concurrence.

    Valid for every bipartite state; tight for the canonical maximally
    entangled state and generally weaker than :func:`theorem1_bound`.

    Raises
    ------
    TrivialDimension
        When min(N1, N2) = 1 and the prefactor is singular.
    """
    r = min(rho.dims)
    if r < 2:
        raise TrivialDimension("concurrence is identically 0 when min(N1, N2) = 1")
    mes = canonical_mes(rho.dims).amplitudes
    fid = np.real(np.vdot(mes, rho.matrix @ mes))
    return BoundValue(float(_prefactor(r) * (fid - 1.0 / r)), "lower")


def fef_two_qubit(rho: DensityMatrix) -> float:
    """Fully entangled fraction: max over maximally entangled |phi> of <phi|rho|phi>.

    For two qubits this is the largest eigenvalue of the real part of
    the overlap matrix of rho in the magic basis, an exact closed form.
    """
    if rho.dims != (2, 2):
        raise DimensionMismatch(f"requires a 2x2 bipartition, got {rho.dims}")
    overlap = _MAGIC_BASIS.conj().T @ rho.matrix @ _MAGIC_BASIS
    return float(np.linalg.eigvalsh(overlap.real)[-1])


def _haar_unitary(n: int, rng) -> np.ndarray:
    z = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    q, r = np.linalg.qr(z)
    d = np.diagonal(r)
    return q * (d / np.abs(d))


def max_mes_fidelity(rho: DensityMatrix, samples: int = 10_000, seed: int = 0) -> float:
    """Best overlap with a maximally entangled state.

    Exact (magic-basis eigenvalue) for 2x2; otherwise the maximum over
    ``samples`` seeded random local-unitary rotations of the canonical
    MES, always including the unrotated MES itself.  The sampled value
    never exceeds the true maximum, so bounds built from it stay valid.
    """
    if rho.dims == (2, 2):
        return fef_two_qubit(rho)
    n1, n2 = rho.dims
    rng = np.random.default_rng(seed)
    mes = canonical_mes(rho.dims).amplitudes
    best = np.real(np.vdot(mes, rho.matrix @ mes))
    for _ in range(samples):
        u1 = _haar_unitary(n1, rng)
        u2 = _haar_unitary(n2, rng)
        phi = np.kron(u1, u2) @ mes
        best = max(best, np.real(np.vdot(phi, rho.matrix @ phi)))
    return float(best)


def theorem1_bound(rho: DensityMatrix, samples: int = 10_000, seed: int = 0) -> BoundValue:
    """Lower bound sqrt(2R/(R-1)) (max-MES-fidelity - 1/R) on the concurrence.

    Saturates for every two-qubit pure state (the analytic path) and for
    maximally entangled states in higher dimension; dominates
    :func:`fidelity_lower_bound` since the maximum beats any fixed MES.
    """
    r = min(rho.dims)
    if r < 2:
        raise TrivialDimension("concurrence is identically 0 when min(N1, N2) = 1")
    fid = max_mes_fidelity(rho, samples=samples, seed=seed)
    return BoundValue(float(_prefactor(r) * (fid - 1.0 / r)), "lower")


def _probe_det(probe_matrix) -> float:
    p = np.asarray(probe_matrix, dtype=complex)
    if p.shape != (2, 2):
        raise DimensionMismatch(f"probe coefficient matrix must be 2x2, got {p.shape}")
    det = abs(np.linalg.det(p))
    if det <= _DET_FLOOR:
        raise SingularProbe(f"|det P| = {det!r} is numerically singular")
    return det


def upper_bound_one_sided(c_in: float, rho_p: DensityMatrix, probe_matrix) -> BoundValue:
    """Upper bound c_in * C(rho_P) / (2|det P|) after a one-sided channel.

    ``rho_p`` is the normalized channel image of the probe state with
    coefficient matrix P; ``c_in`` is the concurrence of the input.
    For pure two-qubit inputs under trace-preserving channels the bound
    is an equality.
    """
    det = _probe_det(probe_matrix)
    return BoundValue(float(c_in * wootters_concurrence(rho_p) / (2.0 * det)), "upper")


def upper_bound_two_sided(c_in: float, rho_p1: DensityMatrix, rho_p2: DensityMatrix,
                          probe_matrix) -> BoundValue:
    """Upper bound with one evolved probe per channel side.

    c_in * C(rho_P1)/(2|det P|) * C(rho_P2)/(2|det P|).
    """
    det = _probe_det(probe_matrix)
    factor1 = wootters_concurrence(rho_p1) / (2.0 * det)
    factor2 = wootters_concurrence(rho_p2) / (2.0 * det)
    return BoundValue(float(c_in * factor1 * factor2), "upper")
