"""Partial transpose over the qubit and entanglement negativity."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .linalg import hermitian_eigenvalues
from .state import DensityMatrix

# Eigenvalues above this threshold are treated as eigensolver noise, so
# separable states report exactly zero negativity.
NEGATIVE_EIG_THRESHOLD = -1e-12


@dataclass(frozen=True)
class PtSpectrum:
    """Spectrum of the partially transposed state.

    ``negativity`` is the absolute sum of the strictly negative
    eigenvalues; ``min_eigenvalue`` is exposed separately so sudden-death
    detection can track the sign crossing directly.
    """

    eigenvalues: tuple[float, ...]
    negativity: float
    min_eigenvalue: float


def partial_transpose_qubit(rho) -> np.ndarray:
    """Transpose the qubit indices only: block (A,B) <- block (B,A).

    Under the 3A+a index convention this swaps the two off-diagonal 3x3
    blocks and keeps the diagonal blocks.
    """
    m = rho.matrix if isinstance(rho, DensityMatrix) else np.asarray(rho, complex)
    out = m.copy()
    out[0:3, 3:6] = m[3:6, 0:3]
    out[3:6, 0:3] = m[0:3, 3:6]
    return out


def negativity(rho) -> PtSpectrum:
    """Negativity of a state: sum of |negative eigenvalues| of its partial
    transpose over the qubit.

    Accepts a DensityMatrix or a raw Hermitian matrix (the latter is used
    for diagnostics of non-trace-preserving evolutions).
    """
    eig = hermitian_eigenvalues(partial_transpose_qubit(rho))
    neg = float(-eig[eig < NEGATIVE_EIG_THRESHOLD].sum())
    return PtSpectrum(
        eigenvalues=tuple(float(x) for x in eig),
        negativity=neg,
        min_eigenvalue=float(eig[0]),
    )
