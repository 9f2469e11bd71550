"""Kraus operator sets for the four noise channels and their application.

Channel kinds pair a single-qubit set with a single-qutrit set:

* ``phase_flip``          - qubit phase flip + qutrit phase flip
* ``dephasing``           - qubit dephasing + qutrit dephasing
* ``bit_trit_flip``       - qubit bit flip + qutrit trit flip
* ``bit_trit_phase_flip`` - qubit bit-phase flip + qutrit trit phase flip

Two of the qutrit sets circulate in a form that violates the completeness
relation sum(E^dag E) = I: the dephasing set (stray unit entries at (0,0)
of E1 and E2, defect 2 in max-norm) and the trit phase flip set (identity
coefficient sqrt(1-2p/3) instead of sqrt(1-p), defect p/3).  The
``corrected`` variant (default) applies exactly those minimal repairs; the
``as_printed`` variant keeps the literal matrices for diagnostics.

The 3x3 matrices can be read against the qutrit basis either exactly as
typeset (``level_order="printed"``, level 0 first) or in reversed level
order (``level_order="reversed"``, level 2 first, the default).  The
reversed reading is the unique one under which the multilocal phase-flip
pipeline reproduces the closed-form minimum partial-transpose eigenvalue
in :mod:`unruhsim.analytic` exactly; the flip channels and all
completeness defects are invariant under the choice.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from .errors import CompletenessViolation, DimensionMismatch, OutOfRange
from .state import DensityMatrix, validate_density

PHASE_FLIP = "phase_flip"
DEPHASING = "dephasing"
BIT_TRIT_FLIP = "bit_trit_flip"
BIT_TRIT_PHASE_FLIP = "bit_trit_phase_flip"
KINDS = (PHASE_FLIP, DEPHASING, BIT_TRIT_FLIP, BIT_TRIT_PHASE_FLIP)

AS_PRINTED = "as_printed"
CORRECTED = "corrected"
VARIANTS = (AS_PRINTED, CORRECTED)

PRINTED = "printed"
REVERSED = "reversed"
DEFAULT_LEVEL_ORDER = REVERSED

MULTILOCAL = "multilocal"
GLOBAL = "global"
COUPLINGS = (MULTILOCAL, GLOBAL)

PRODUCT = "product"
CORRELATED = "correlated"
GLOBAL_MODES = (PRODUCT, CORRELATED)

COMPLETENESS_TOL = 1e-12

_I2 = np.eye(2, dtype=complex)
_I3 = np.eye(3, dtype=complex)
# Reversal permutation for the 3-level basis: level 2 first.
_REV3 = np.fliplr(np.eye(3)).astype(complex)
_OMEGA = complex(np.exp(2j * np.pi / 3))


@dataclass(frozen=True)
class KrausSet:
    """An ordered set of same-dimension Kraus operators for one channel."""

    dim: int
    ops: tuple[np.ndarray, ...]
    p: float
    kind: str
    variant: str = CORRECTED


@dataclass(frozen=True)
class ChannelSpec:
    """A fully specified channel: kind, coupling and decoherence parameters.

    ``p1`` and ``p2`` are the local qubit and qutrit parameters; ``p`` is
    the collective parameter used only for global coupling.
    """

    kind: str
    coupling: str
    p1: float = 0.0
    p2: float = 0.0
    p: float = 0.0
    global_mode: str = PRODUCT
    variant: str = CORRECTED
    level_order: str = DEFAULT_LEVEL_ORDER

    def __post_init__(self):
        if self.kind not in KINDS:
            raise OutOfRange(f"unknown channel kind {self.kind!r}")
        if self.coupling not in COUPLINGS:
            raise OutOfRange(f"unknown coupling {self.coupling!r}")
        if self.global_mode not in GLOBAL_MODES:
            raise OutOfRange(f"unknown global mode {self.global_mode!r}")
        if self.variant not in VARIANTS:
            raise OutOfRange(f"unknown variant {self.variant!r}")
        for name in ("p1", "p2", "p"):
            _check_p(getattr(self, name), name)

    def with_params(self, p1=None, p2=None, p=None) -> "ChannelSpec":
        return replace(
            self,
            p1=self.p1 if p1 is None else p1,
            p2=self.p2 if p2 is None else p2,
            p=self.p if p is None else p,
        )


def _check_p(p: float, name: str = "p") -> float:
    if not (0.0 <= p <= 1.0):
        raise OutOfRange(f"decoherence parameter {name}={p!r} outside [0, 1]")
    return float(p)


def qubit_channel(kind: str, p: float) -> KrausSet:
    """Single-qubit Kraus set for the qubit half of ``kind``.

    All four qubit sets satisfy the completeness relation for every p.
    """
    p = _check_p(p)
    if kind == PHASE_FLIP:
        ops = (
            math.sqrt(1 - p / 2) * _I2,
            math.sqrt(p / 2) * np.diag([1.0, -1.0]).astype(complex),
        )
    elif kind == DEPHASING:
        ops = (
            np.diag([1.0, math.sqrt(1 - p)]).astype(complex),
            np.diag([0.0, math.sqrt(p)]).astype(complex),
        )
    elif kind == BIT_TRIT_FLIP:
        ops = (
            math.sqrt(1 - p / 2) * _I2,
            math.sqrt(p / 2) * np.array([[0, 1], [1, 0]], dtype=complex),
        )
    elif kind == BIT_TRIT_PHASE_FLIP:
        ops = (
            math.sqrt(1 - p / 2) * _I2,
            math.sqrt(p / 2) * np.array([[0, -1j], [1j, 0]], dtype=complex),
        )
    else:
        raise OutOfRange(f"unknown channel kind {kind!r}")
    return KrausSet(dim=2, ops=ops, p=p, kind=kind)


def _qutrit_ops_printed(kind: str, p: float, variant: str) -> list[np.ndarray]:
    """The 3x3 operator matrices in the typeset level order (0 first)."""
    q = math.sqrt(1 - p)
    sp = math.sqrt(p)
    if kind == PHASE_FLIP:
        e0 = np.diag([1.0, q, q]).astype(complex)
        e1 = np.zeros((3, 3), dtype=complex)
        e1[0, 1] = sp
        e2 = np.zeros((3, 3), dtype=complex)
        e2[0, 2] = sp
        return [e0, e1, e2]
    if kind == DEPHASING:
        e0 = np.diag([1.0, q, q]).astype(complex)
        e1 = np.diag([0.0, sp, 0.0]).astype(complex)
        e2 = np.diag([0.0, 0.0, sp]).astype(complex)
        if variant == AS_PRINTED:
            # The circulating form carries stray unit (0,0) entries.
            e1[0, 0] = 1.0
            e2[0, 0] = 1.0
        return [e0, e1, e2]
    if kind == BIT_TRIT_FLIP:
        w = math.sqrt(p / 3)
        cyc = np.array([[0, 0, 1], [1, 0, 0], [0, 1, 0]], dtype=complex)
        return [math.sqrt(1 - 2 * p / 3) * _I3, w * cyc, w * (cyc @ cyc)]
    if kind == BIT_TRIT_PHASE_FLIP:
        w = math.sqrt(p / 3)
        om, omc = _OMEGA, _OMEGA.conjugate()
        e1 = w * np.array([[0, 0, om], [1, 0, 0], [0, omc, 0]], dtype=complex)
        e2 = w * np.array([[0, omc, 0], [0, 0, om], [1, 0, 0]], dtype=complex)
        e3 = w * np.array([[0, om, 0], [0, 0, omc], [1, 0, 0]], dtype=complex)
        coeff = math.sqrt(1 - 2 * p / 3) if variant == AS_PRINTED else q
        return [coeff * _I3, e1, e2, e3]
    raise OutOfRange(f"unknown channel kind {kind!r}")


def qutrit_channel(
    kind: str,
    p: float,
    variant: str = CORRECTED,
    level_order: str = DEFAULT_LEVEL_ORDER,
) -> KrausSet:
    """Single-qutrit Kraus set for the qutrit half of ``kind``.

    ``variant=AS_PRINTED`` keeps the literal circulating matrices even
    where they violate completeness; the default repairs them minimally.
    """
    p = _check_p(p)
    if variant not in VARIANTS:
        raise OutOfRange(f"unknown variant {variant!r}")
    if level_order not in (PRINTED, REVERSED):
        raise OutOfRange(f"unknown level order {level_order!r}")
    ops = _qutrit_ops_printed(kind, p, variant)
    if level_order == REVERSED:
        ops = [_REV3 @ e @ _REV3 for e in ops]
    return KrausSet(dim=3, ops=tuple(ops), p=p, kind=kind, variant=variant)


def completeness_defect(k: KrausSet) -> float:
    """Max-norm of (sum E^dag E - I)."""
    acc = np.zeros((k.dim, k.dim), dtype=complex)
    for e in k.ops:
        acc += e.conj().T @ e
    return float(np.max(np.abs(acc - np.eye(k.dim))))


def lift_qubit(k: KrausSet) -> KrausSet:
    """Tensor each qubit operator with the qutrit identity (index 3A+a)."""
    if k.dim != 2:
        raise DimensionMismatch(f"lift_qubit expects dim 2, got {k.dim}")
    ops = tuple(np.kron(e, _I3) for e in k.ops)
    return KrausSet(dim=6, ops=ops, p=k.p, kind=k.kind, variant=k.variant)


def lift_qutrit(k: KrausSet) -> KrausSet:
    """Tensor each qutrit operator with the qubit identity (index 3A+a)."""
    if k.dim != 3:
        raise DimensionMismatch(f"lift_qutrit expects dim 3, got {k.dim}")
    ops = tuple(np.kron(_I2, e) for e in k.ops)
    return KrausSet(dim=6, ops=ops, p=k.p, kind=k.kind, variant=k.variant)


def apply_unchecked(ops, matrix: np.ndarray) -> np.ndarray:
    """sum E rho E^dag without any revalidation of the result."""
    out = np.zeros_like(np.asarray(matrix, dtype=complex))
    for e in ops:
        out += e @ matrix @ e.conj().T
    return out


def apply(k: KrausSet, rho: DensityMatrix) -> DensityMatrix:
    """Evolve a state through a 6-dimensional Kraus set and revalidate.

    Raises CompletenessViolation (with the measured defect) when the set
    is not trace preserving; incomplete sets are never silently
    renormalized.
    """
    if k.dim != 6:
        raise DimensionMismatch(f"apply expects a lifted dim-6 set, got {k.dim}")
    defect = completeness_defect(k)
    if defect > COMPLETENESS_TOL:
        raise CompletenessViolation(
            f"Kraus set {k.kind!r} ({k.variant}) has completeness defect "
            f"{defect:.3e}; evolution would not preserve the trace",
            defect=defect,
        )
    return validate_density(apply_unchecked(k.ops, rho.matrix))


def _local_ops(
    kind: str, p1: float, p2: float, variant: str, level_order: str
) -> list[np.ndarray]:
    qubit = lift_qubit(qubit_channel(kind, p1))
    qutrit = lift_qutrit(qutrit_channel(kind, p2, variant, level_order))
    return [b @ a for a in qubit.ops for b in qutrit.ops]


def collective_set(
    kind: str,
    p: float,
    global_mode: str = PRODUCT,
    variant: str = CORRECTED,
    level_order: str = DEFAULT_LEVEL_ORDER,
) -> KrausSet:
    """The shared-environment Kraus set acting on the full 6-level system.

    ``product`` tensors every qubit operator with every qutrit operator
    and is the unique trace-preserving completion.  ``correlated`` pairs
    operators index by index, padding the shorter set with zeros; it
    generally violates completeness, which callers must check.
    """
    qb = qubit_channel(kind, p)
    qt = qutrit_channel(kind, p, variant, level_order)
    if global_mode == PRODUCT:
        ops = tuple(np.kron(a, b) for a in qb.ops for b in qt.ops)
    elif global_mode == CORRELATED:
        n = max(len(qb.ops), len(qt.ops))
        a_ops = list(qb.ops) + [np.zeros((2, 2), dtype=complex)] * (n - len(qb.ops))
        b_ops = list(qt.ops) + [np.zeros((3, 3), dtype=complex)] * (n - len(qt.ops))
        ops = tuple(np.kron(a, b) for a, b in zip(a_ops, b_ops))
    else:
        raise OutOfRange(f"unknown global mode {global_mode!r}")
    return KrausSet(dim=6, ops=ops, p=p, kind=kind, variant=variant)


def multilocal_evolve(
    rho: DensityMatrix,
    kind: str,
    p1: float,
    p2: float,
    variant: str = CORRECTED,
    level_order: str = DEFAULT_LEVEL_ORDER,
    allow_incomplete: bool = False,
):
    """Independent local environments: qubit at p1, qutrit at p2.

    Returns a validated DensityMatrix; with ``allow_incomplete`` a set
    that violates completeness yields the raw evolved ndarray instead of
    raising, for diagnostics of non-trace-preserving variants.
    """
    ops = _local_ops(kind, p1, p2, variant, level_order)
    combined = KrausSet(dim=6, ops=tuple(ops), p=max(p1, p2), kind=kind,
                        variant=variant)
    if allow_incomplete and completeness_defect(combined) > COMPLETENESS_TOL:
        return apply_unchecked(combined.ops, rho.matrix)
    return apply(combined, rho)


def global_evolve(
    rho: DensityMatrix,
    kind: str,
    p1: float,
    p2: float,
    p: float,
    global_mode: str = PRODUCT,
    variant: str = CORRECTED,
    level_order: str = DEFAULT_LEVEL_ORDER,
    allow_incomplete: bool = False,
):
    """Local environments followed by a collective one at parameter p.

    Returns a validated DensityMatrix.  When the collective set violates
    completeness (correlated mode in general), raises
    CompletenessViolation unless ``allow_incomplete`` is set, in which
    case the raw evolved matrix (an ndarray, generally not unit trace) is
    returned for diagnostics.
    """
    local = KrausSet(
        dim=6,
        ops=tuple(_local_ops(kind, p1, p2, variant, level_order)),
        p=max(p1, p2),
        kind=kind,
        variant=variant,
    )
    coll = collective_set(kind, p, global_mode, variant, level_order)
    defect = max(completeness_defect(local), completeness_defect(coll))
    mid = apply_unchecked(local.ops, rho.matrix)
    out = apply_unchecked(coll.ops, mid)
    if defect > COMPLETENESS_TOL:
        if allow_incomplete:
            return out
        raise CompletenessViolation(
            f"{kind!r} global evolution in {global_mode!r} mode uses a "
            f"Kraus set with completeness defect {defect:.3e}",
            defect=defect,
        )
    return validate_density(out)


def evolve(rho: DensityMatrix, spec: ChannelSpec, allow_incomplete: bool = False):
    """Dispatch on the coupling of a ChannelSpec."""
    if spec.coupling == MULTILOCAL:
        return multilocal_evolve(
            rho,
            spec.kind,
            spec.p1,
            spec.p2,
            spec.variant,
            spec.level_order,
            allow_incomplete=allow_incomplete,
        )
    return global_evolve(
        rho,
        spec.kind,
        spec.p1,
        spec.p2,
        spec.p,
        spec.global_mode,
        spec.variant,
        spec.level_order,
        allow_incomplete=allow_incomplete,
    )
