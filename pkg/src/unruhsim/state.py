"""The accelerated-observer qubit-qutrit state and density-matrix validation.

Basis convention, used by every module in the package: composite index
``3*A + a`` for qubit level ``A`` in {0, 1} and qutrit level ``a`` in
{0, 1, 2}.  The acceleration parameter ``r`` runs from 0 (inertial) to
pi/4 (infinite-acceleration limit); the shared entanglement carries a
cos^2(r) envelope.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import NegativeEigenvalue, NotHermitian, OutOfRange, TraceDeviation
from .linalg import as_matrix, hermiticity_defect

R_MAX = math.pi / 4

HERMITICITY_TOL = 1e-12
TRACE_TOL = 1e-12
PSD_TOL = 1e-10

DIM = 6


@dataclass(frozen=True)
class DensityMatrix:
    """A validated 6x6 density matrix (Hermitian, PSD, unit trace)."""

    matrix: np.ndarray

    @property
    def m(self) -> np.ndarray:
        return self.matrix


def validate_density(
    m,
    hermiticity_tol: float = HERMITICITY_TOL,
    trace_tol: float = TRACE_TOL,
    psd_tol: float = PSD_TOL,
) -> DensityMatrix:
    """Check the density-matrix invariants and wrap the matrix.

    Raises NotHermitian, TraceDeviation or NegativeEigenvalue with the
    measured defect when an invariant fails.
    """
    m = as_matrix(m)
    if m.shape != (DIM, DIM):
        raise OutOfRange(f"expected a {DIM}x{DIM} matrix, got {m.shape}")
    h_defect = hermiticity_defect(m)
    if h_defect > hermiticity_tol:
        raise NotHermitian(
            f"hermiticity defect {h_defect:.3e} exceeds {hermiticity_tol:.3e}"
        )
    tr_defect = abs(np.trace(m) - 1.0)
    if tr_defect > trace_tol:
        raise TraceDeviation(
            f"trace deviates from 1 by {tr_defect:.3e} (tolerance {trace_tol:.3e})"
        )
    min_eig = float(np.linalg.eigvalsh(m)[0])
    if min_eig < -psd_tol:
        raise NegativeEigenvalue(
            f"minimum eigenvalue {min_eig:.3e} below -{psd_tol:.3e}"
        )
    out = m.copy()
    out.flags.writeable = False
    return DensityMatrix(out)


def unruh_state(r: float) -> DensityMatrix:
    """Qubit-qutrit state shared with a uniformly accelerated observer.

    Nonzero entries: cos^2(r)/2 at (1,1), (1,3), (3,1), (3,3) and
    sin^2(r)/2 at (2,2), (5,5).  At r = 0 this is the maximally entangled
    two-level Bell state embedded in the qubit-qutrit space.
    """
    if not (0.0 <= r <= R_MAX):
        raise OutOfRange(f"acceleration parameter r={r!r} outside [0, pi/4]")
    c2 = math.cos(r) ** 2
    s2 = math.sin(r) ** 2
    m = np.zeros((DIM, DIM), dtype=complex)
    for i, j in [(1, 1), (1, 3), (3, 1), (3, 3)]:
        m[i, j] = c2 / 2
    m[2, 2] = s2 / 2
    m[5, 5] = s2 / 2
    return validate_density(m)


def reduced_qubit(rho: DensityMatrix) -> np.ndarray:
    """Partial trace over the qutrit: 2x2 reduced state."""
    m = rho.matrix.reshape(2, 3, 2, 3)
    return np.einsum("iaja->ij", m)


def reduced_qutrit(rho: DensityMatrix) -> np.ndarray:
    """Partial trace over the qubit: 3x3 reduced state."""
    m = rho.matrix.reshape(2, 3, 2, 3)
    return np.einsum("iaib->ab", m)
