"""Kraus-operator quantum channels acting on one side of a bipartite state.

Channels need not be trace preserving: applying one returns the
normalized image together with the probability (trace of the raw image).
Kraus sets whose completeness sum exceeds the identity are rejected at
construction, since a "probability" above 1 has no meaning.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import DimensionMismatch, InvalidChannel, OutOfRange, ZeroProbability
from .qlinalg import DensityMatrix

# Completeness defect below this is treated as exactly trace preserving.
TP_TOLERANCE = 1e-10

# Below this, normalizing the channel image amplifies noise beyond any
# stated tolerance.
PROBABILITY_FLOOR = 1e-14


@dataclass(frozen=True)
class KrausChannel:
    """Ordered set of square Kraus operators on a single subsystem.

    Attributes
    ----------
    input_dim : int
        Dimension of the subsystem the operators act on.
    operators : tuple of ndarray
        The Kraus operators, each input_dim x input_dim.
    completeness_defect : float
        Spectral norm of sum(M^dag M) - I.
    trace_preserving : bool
        True when the defect is at most 1e-10.
    """

    input_dim: int
    operators: tuple
    completeness_defect: float = field(init=False)
    trace_preserving: bool = field(init=False)

    def __post_init__(self):
        d = int(self.input_dim)
        if d < 1:
            raise DimensionMismatch(f"input_dim must be positive, got {self.input_dim}")
        if len(self.operators) == 0:
            raise InvalidChannel("a channel needs at least one Kraus operator")
        ops = []
        for m in self.operators:
            m = np.array(m, dtype=complex)
            if m.shape != (d, d):
                raise DimensionMismatch(f"Kraus operator shape {m.shape} != ({d}, {d})")
            if not np.all(np.isfinite(m.view(float))):
                raise InvalidChannel("Kraus operator has non-finite entries")
            m.setflags(write=False)
            ops.append(m)
        total = sum(m.conj().T @ m for m in ops)
        gap = total - np.eye(d)
        if np.linalg.eigvalsh(gap)[-1] > TP_TOLERANCE:
            raise InvalidChannel("sum M^dag M exceeds the identity; probabilities would exceed 1")
        defect = np.linalg.norm(gap, 2)
        object.__setattr__(self, "input_dim", d)
        object.__setattr__(self, "operators", tuple(ops))
        object.__setattr__(self, "completeness_defect", float(defect))
        object.__setattr__(self, "trace_preserving", bool(defect <= TP_TOLERANCE))


@dataclass(frozen=True)
class ChannelApplication:
    """Normalized channel image plus the probability that normalized it."""

    output: DensityMatrix
    probability: float


def apply_one_sided(channel: KrausChannel, rho: DensityMatrix, side: str = "first") -> ChannelApplication:
    """Apply a channel to one subsystem of a bipartite state.

    The image is sum_k (M_k o I) rho (M_k^dag o I) for side "first"
    (I o M_k for side "second"), normalized by its trace p.

    Raises
    ------
    DimensionMismatch
        If the channel dimension does not match the selected subsystem.
    ZeroProbability
        If p <= 1e-14, i.e. the channel annihilates the state.
    """
    n1, n2 = rho.dims
    if side == "first":
        if channel.input_dim != n1:
            raise DimensionMismatch(f"channel acts on dim {channel.input_dim}, subsystem has dim {n1}")
        lifted = [np.kron(m, np.eye(n2)) for m in channel.operators]
    elif side == "second":
        if channel.input_dim != n2:
            raise DimensionMismatch(f"channel acts on dim {channel.input_dim}, subsystem has dim {n2}")
        lifted = [np.kron(np.eye(n1), m) for m in channel.operators]
    else:
        raise ValueError(f"side must be 'first' or 'second', got {side!r}")

    image = np.zeros_like(rho.matrix)
    for op in lifted:
        image = image + op @ rho.matrix @ op.conj().T
    p = np.trace(image).real
    if p <= PROBABILITY_FLOOR:
        raise ZeroProbability(f"channel image has trace {p!r}")
    return ChannelApplication(DensityMatrix(rho.dims, image / p), float(p))


def apply_two_sided(ch1: KrausChannel, ch2: KrausChannel, rho: DensityMatrix) -> ChannelApplication:
    """Apply ch1 to the first subsystem and ch2 to the second.

    One-sided superoperators on different subsystems commute, so the
    composition order is immaterial; the overall probability is the
    product of the stage probabilities.
    """
    first = apply_one_sided(ch1, rho, side="first")
    second = apply_one_sided(ch2, first.output, side="second")
    return ChannelApplication(second.output, first.probability * second.probability)


def amplitude_damping(gamma: float) -> KrausChannel:
    """Qubit amplitude damping: diag(1, sqrt(1-gamma)) and sqrt(gamma)|0><1|."""
    gamma = float(gamma)
    if not 0.0 <= gamma <= 1.0:
        raise OutOfRange(f"gamma must be in [0, 1], got {gamma}")
    m1 = np.array([[1.0, 0.0], [0.0, np.sqrt(1.0 - gamma)]])
    m2 = np.array([[0.0, np.sqrt(gamma)], [0.0, 0.0]])
    return KrausChannel(2, (m1, m2))


def depolarizing(p: float) -> KrausChannel:
    """Qubit depolarizing channel: rho -> (1-p) rho + p I/2."""
    p = float(p)
    if not 0.0 <= p <= 1.0:
        raise OutOfRange(f"p must be in [0, 1], got {p}")
    eye = np.eye(2, dtype=complex)
    sx = np.array([[0, 1], [1, 0]], dtype=complex)
    sy = np.array([[0, -1j], [1j, 0]])
    sz = np.array([[1, 0], [0, -1]], dtype=complex)
    return KrausChannel(2, (
        np.sqrt(1.0 - 3.0 * p / 4.0) * eye,
        np.sqrt(p / 4.0) * sx,
        np.sqrt(p / 4.0) * sy,
        np.sqrt(p / 4.0) * sz,
    ))


def phase_damping(lam: float) -> KrausChannel:
    """Qubit phase damping: diagonal entries untouched, coherences shrink."""
    lam = float(lam)
    if not 0.0 <= lam <= 1.0:
        raise OutOfRange(f"lambda must be in [0, 1], got {lam}")
    m1 = np.array([[1.0, 0.0], [0.0, np.sqrt(1.0 - lam)]])
    m2 = np.array([[0.0, 0.0], [0.0, np.sqrt(lam)]])
    return KrausChannel(2, (m1, m2))
