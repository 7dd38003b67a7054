"""Probe-state recovery of concurrence lower bounds.

A full-rank N x N pure "probe" state |P> is sent through the channel
instead of the state of interest.  Its normalized image, together with
the initial density matrix, determines the fidelity-based lower bound of
the evolved state's concurrence exactly; the evolved state itself is
never needed.  The same data also yields the renormalization factor p_t
for non-trace-preserving channels, either through the reduced state of
the input or through a sum over the generalized Bell basis.

All formulas below assume the package's first-index-major vectorization,
under which |psi> = (psi P^-1 o 1)|P> = (1 o psi^T (P^-1)^T)|P> holds
literally for coefficient matrices psi.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .concurrence import BoundValue, _prefactor
from .errors import DimensionMismatch, NotNormalized, SingularProbe, ZeroProbability
from .qlinalg import (
    DensityMatrix,
    PureState,
    TOL_RECONSTRUCT,
    partial_trace,
    state_to_matrix,
    swap_operator,
)

_RANK_FLOOR = 1e-8
_PT_FLOOR = 1e-14

# P^-1 enters the one-sided bound quadratically and the two-sided bound
# quartically; past this condition number the result deserves a warning.
CONDITION_WARN = 1e4


@dataclass(frozen=True)
class MesBasis:
    """Orthonormal basis of N^2 maximally entangled states.

    State j = N*j0 + j1 is (1/sqrt(N)) sum_k exp(2 pi i j0 k / N) |k>|k + j1 mod N>.
    """

    dim: int
    states: tuple

    def coefficient_matrices(self):
        """Unit-Frobenius-norm coefficient matrices C_j with vec(C_j) = |Phi_j>."""
        return [state_to_matrix(s) for s in self.states]

    def transition_matrices(self):
        """Unitaries sqrt(N) C_j mapping the canonical MES onto each basis state.

        For N = 2 these are the identity and the three Pauli matrices
        (sigma_y carrying a factor i).
        """
        return [np.sqrt(self.dim) * state_to_matrix(s) for s in self.states]


@dataclass(frozen=True)
class ProbeState:
    """Validated full-rank probe with cached inverse and conditioning data."""

    dim: int
    matrix: np.ndarray
    inverse: np.ndarray
    condition: float


def mes_basis(n: int) -> MesBasis:
    """Generalized Bell basis for an N x N bipartition, N >= 2."""
    if n < 2:
        raise ValueError(f"need N >= 2, got {n}")
    states = []
    for j0 in range(n):
        for j1 in range(n):
            amp = np.zeros(n * n, dtype=complex)
            for k in range(n):
                amp[k * n + (k + j1) % n] = np.exp(2j * np.pi * j0 * k / n) / np.sqrt(n)
            states.append(PureState((n, n), amp))
    return MesBasis(n, tuple(states))


def probe_from_matrix(p) -> ProbeState:
    """Validate a coefficient matrix as a probe state.

    Raises
    ------
    SingularProbe
        If the smallest singular value is at most 1e-8.
    NotNormalized
        If the Frobenius norm is off 1 by more than 1e-10.
    DimensionMismatch
        If the matrix is not square.
    """
    p = np.array(p, dtype=complex)
    if p.ndim != 2 or p.shape[0] != p.shape[1]:
        raise DimensionMismatch(f"probe matrix must be square, got shape {p.shape}")
    norm = np.linalg.norm(p)
    if abs(norm - 1.0) > TOL_RECONSTRUCT:
        raise NotNormalized(f"Frobenius norm {norm!r} is not 1 within 1e-10")
    p = p / norm
    s = np.linalg.svd(p, compute_uv=False)
    if s[-1] <= _RANK_FLOOR:
        raise SingularProbe(f"smallest singular value {s[-1]!r} <= 1e-8")
    p.setflags(write=False)
    inv = np.linalg.inv(p)
    inv.setflags(write=False)
    return ProbeState(p.shape[0], p, inv, float(s[0] / s[-1]))


def canonical_probe(n: int) -> ProbeState:
    """The canonical MES as a probe: P = I/sqrt(N)."""
    return probe_from_matrix(np.eye(n) / np.sqrt(n))


def decompose_via_probe(psi: PureState, probe: ProbeState) -> np.ndarray:
    """Operator L = psi P^-1 with (L o 1)|P> = |psi>.

    The mirrored form (1 o psi^T (P^-1)^T)|P> = |psi> holds as well.
    """
    if psi.dims != (probe.dim, probe.dim):
        raise DimensionMismatch(f"state dims {psi.dims} do not match probe dim {probe.dim}")
    return state_to_matrix(psi) @ probe.inverse


def _check_square(rho: DensityMatrix, probe: ProbeState):
    if rho.dims[0] != rho.dims[1]:
        raise DimensionMismatch(f"probe formulas need a square bipartition, got {rho.dims}")
    if rho.dims != (probe.dim, probe.dim):
        raise DimensionMismatch(f"state dims {rho.dims} do not match probe dim {probe.dim}")


def _swap_density(rho: DensityMatrix) -> DensityMatrix:
    n = rho.dims[0]
    s = swap_operator(n)
    return DensityMatrix(rho.dims, s @ rho.matrix @ s)


def _to_first_side(rho, evolved_probe, probe, side):
    """Reduce the side="second" case to side="first" by swapping subsystems.

    Swapping both states and transposing the probe matrix turns
    (1 o $)|P><P| into ($ o 1)|P^T><P^T|, after which every first-side
    formula applies unchanged.
    """
    if side == "first":
        return rho, evolved_probe, probe
    if side != "second":
        raise ValueError(f"side must be 'first' or 'second', got {side!r}")
    return (_swap_density(rho), _swap_density(evolved_probe),
            probe_from_matrix(probe.matrix.T))


def pt_via_reduced(rho: DensityMatrix, evolved_probe: DensityMatrix, probe: ProbeState,
                   p_prime: float = 1.0, side: str = "first") -> float:
    """Renormalization factor p_t = p/p' from the reduced input state.

    p_t = Tr[ rho_P' (1 o (P^-1 rho_A P^-dag)^*) ] with rho_A the reduced
    state of the input on the channel side.  ``p_prime`` is carried for
    bookkeeping (p = p_t * p'); the normalized probe image already
    contains the 1/p' factor, so the value does not depend on it.
    """
    _check_square(rho, probe)
    rho, evolved_probe, probe = _to_first_side(rho, evolved_probe, probe, side)
    n = probe.dim
    rho_a = partial_trace(rho, keep="first")
    window = np.kron(np.eye(n), (probe.inverse @ rho_a @ probe.inverse.conj().T).conj())
    return float(np.real(np.trace(evolved_probe.matrix @ window)))


def pt_via_mes_sum(rho: DensityMatrix, evolved_probe: DensityMatrix, probe: ProbeState,
                   side: str = "first") -> float:
    """Renormalization factor p_t as a sum over the generalized Bell basis.

    p_t = sum_m Tr[ rho_P' (C_m o (P^-1)^*) S rho^* S (C_m^dag o (P^-1)^T) ],
    one term per basis state (four for a pair of qubits).  Agrees with
    :func:`pt_via_reduced` to machine precision.
    """
    _check_square(rho, probe)
    rho, evolved_probe, probe = _to_first_side(rho, evolved_probe, probe, side)
    n = probe.dim
    s = swap_operator(n)
    srs = s @ rho.matrix.conj() @ s
    total = 0.0
    for c in mes_basis(n).coefficient_matrices():
        left = np.kron(c, probe.inverse.conj())
        total += np.real(np.trace(evolved_probe.matrix @ left @ srs @ left.conj().T))
    return float(total)


def _warn_if_ill_conditioned(probe: ProbeState):
    if probe.condition > CONDITION_WARN:
        warnings.warn(
            f"probe condition number {probe.condition:.3g} exceeds {CONDITION_WARN:.0e}; "
            "the bound may carry amplified rounding error",
            RuntimeWarning,
            stacklevel=3,
        )


def lower_bound_one_sided(rho: DensityMatrix, evolved_probe: DensityMatrix, probe: ProbeState,
                          p_prime: float = 1.0, side: str = "first") -> BoundValue:
    """Concurrence lower bound of the one-sided channel image, probe data only.

    Evaluates sqrt(2R/(R-1)) (Tr[f(rho_P') rho^*] - 1/R) with
    f(x) = (1/(p_t R)) S (1 o (P^-1)^T) x (1 o (P^-1)^*) S, which equals
    the fidelity lower bound of the directly evolved state.  ``rho`` is
    the *initial* state; the evolved state is never constructed.

    Raises
    ------
    ZeroProbability
        If p_t falls below 1e-14.
    """
    _check_square(rho, probe)
    _warn_if_ill_conditioned(probe)
    rho_f, ep_f, probe_f = _to_first_side(rho, evolved_probe, probe, side)
    n = probe_f.dim
    p_t = pt_via_reduced(rho_f, ep_f, probe_f)
    if p_t <= _PT_FLOOR:
        raise ZeroProbability(f"p_t = {p_t!r}; channel annihilates the state")
    s = swap_operator(n)
    pinv = probe_f.inverse
    dressed = np.kron(np.eye(n), pinv.T) @ ep_f.matrix @ np.kron(np.eye(n), pinv.conj())
    fid = np.real(np.trace(s @ rho_f.matrix.conj() @ s @ dressed)) / (p_t * n)
    return BoundValue(float(_prefactor(n) * (fid - 1.0 / n)), "lower")


def _two_sided_overlap_mes(rho_m, a1, a2, probe) -> float:
    """Tr[|mes><mes| ($1 o $2) rho] via the double Bell-basis sum; no decomposition of rho."""
    n = probe.dim
    s = swap_operator(n)
    pinv = probe.inverse
    basis = mes_basis(n)
    cs = basis.coefficient_matrices()
    vecs = np.column_stack([c.reshape(-1) for c in cs])
    weights = vecs.conj().T @ a2 @ vecs  # <Phi_m| A2 |Phi_n>
    srs = s @ rho_m @ s
    a1c = a1.conj()
    lefts = [a1c @ np.kron(c.T @ pinv.T, pinv) @ srs for c in cs]
    rights = [np.kron(pinv.conj() @ c.conj(), pinv.conj().T) for c in cs]
    total = 0.0 + 0.0j
    for m in range(n * n):
        for k in range(n * n):
            total += weights[m, k] * np.trace(lefts[m] @ rights[k])
    return float(np.real(total) / n)


def _two_sided_overlap_eigen(rho_m, a1, a2, probe) -> float:
    """Same overlap through the eigenvalue decomposition of rho.

    Eigenvectors are subnormalized (norm^2 = eigenvalue); eigenvalues
    below 1e-14 are dropped.
    """
    n = probe.dim
    s = swap_operator(n)
    pinv = probe.inverse
    sas = s @ a2 @ s
    w, v = np.linalg.eigh(rho_m)
    total = 0.0 + 0.0j
    for i in range(len(w)):
        if w[i] < 1e-14:
            continue
        x = (np.sqrt(w[i]) * v[:, i]).reshape(n, n)
        y = pinv @ x @ pinv
        lift = np.kron(np.eye(n), y)
        total += np.trace(a1.conj() @ lift @ sas @ lift.conj().T)
    return float(np.real(total) / n)


def _channel_completeness_from_probe(a, probe, side) -> np.ndarray:
    """Recover sum_k M_k^dag M_k of the channel from its (normalized) probe image."""
    n = probe.dim
    four = a.reshape(n, n, n, n)
    pinv = probe.inverse
    if side == "first":
        reduced = np.trace(four, axis1=0, axis2=2)  # trace over the channel side
        return pinv.conj().T @ reduced.T @ pinv
    reduced = np.trace(four, axis1=1, axis2=3)
    return (pinv @ reduced @ pinv.conj().T).T


def lower_bound_two_sided(rho: DensityMatrix, evolved_probe_1: DensityMatrix,
                          evolved_probe_2: DensityMatrix, probe: ProbeState,
                          p1_prime: float = 1.0, p2_prime: float = 1.0,
                          method: str = "mes") -> BoundValue:
    """Concurrence lower bound of the two-sided channel image, probe data only.

    ``evolved_probe_1`` is the normalized image of the probe under the
    first-side channel, ``evolved_probe_2`` under the second-side one.
    The MES-fidelity of the evolved state and the total two-sided
    probability are both reconstructed from these images plus ``rho``;
    stage probabilities cancel, so the ``p*_prime`` values are carried
    only for bookkeeping.

    ``method`` selects the decomposition-free double Bell-basis sum
    ("mes", the default) or the eigenvalue-decomposition variant
    ("eigen"); the two agree to machine precision.
    """
    _check_square(rho, probe)
    _warn_if_ill_conditioned(probe)
    n = probe.dim
    a1 = evolved_probe_1.matrix
    a2 = evolved_probe_2.matrix
    if method == "mes":
        overlap = _two_sided_overlap_mes(rho.matrix, a1, a2, probe)
    elif method == "eigen":
        overlap = _two_sided_overlap_eigen(rho.matrix, a1, a2, probe)
    else:
        raise ValueError(f"method must be 'mes' or 'eigen', got {method!r}")
    q1 = _channel_completeness_from_probe(a1, probe, "first")
    q2 = _channel_completeness_from_probe(a2, probe, "second")
    p = np.real(np.trace(np.kron(q1, q2) @ rho.matrix))
    if p <= _PT_FLOOR:
        raise ZeroProbability(f"two-sided probability {p!r}; channels annihilate the state")
    return BoundValue(float(_prefactor(n) * (overlap / p - 1.0 / n)), "lower")
