"""Closed-form minimum partial-transpose eigenvalues and their verification.

The closed forms below are treated as hypotheses: the numeric Kraus
pipeline is the source of truth, and ``verify_against_numeric`` measures
how far each formula deviates from it over a parameter grid.  Square
roots of even powers are resolved as absolute values of the base factors;
with all parameters in [0, 1] every base is nonnegative.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import channels
from .channels import (
    CORRECTED,
    DEFAULT_LEVEL_ORDER,
    DEPHASING,
    GLOBAL,
    MULTILOCAL,
    PHASE_FLIP,
    PRODUCT,
)
from .entanglement import negativity
from .errors import OutOfRange
from .state import R_MAX, unruh_state

MATCH = "match"
MISMATCH = "mismatch"

ANALYTIC_KINDS = (PHASE_FLIP, DEPHASING)


def _check(value: float, name: str, hi: float = 1.0) -> float:
    if not (0.0 <= value <= hi):
        raise OutOfRange(f"{name}={value!r} outside [0, {hi:g}]")
    return float(value)


def phase_flip_lambda(
    coupling: str, p1: float, p2: float, p: float, r: float
) -> float:
    """Closed-form most-negative PT eigenvalue for the phase-flip channel.

    multilocal: -1/2 (1-p1)(1-p2) cos^2 r
    global:     -1/2 (1-p)(1-p1)^2 (1-p2) cos^2 r

    The global line is evaluated literally as written; verification shows
    the pipeline actually follows -1/2 (1-p)^2 (1-p1)(1-p2) cos^2 r, i.e.
    the exponents on (1-p) and (1-p1) are swapped, so the global verdict
    is a recorded mismatch.
    """
    _check(p1, "p1"), _check(p2, "p2"), _check(r, "r", R_MAX)
    c2 = math.cos(r) ** 2
    if coupling == MULTILOCAL:
        return -0.5 * (1 - p1) * (1 - p2) * c2
    if coupling == GLOBAL:
        _check(p, "p")
        return -0.5 * abs(1 - p) * (1 - p1) ** 2 * abs(1 - p2) * c2
    raise OutOfRange(f"unknown coupling {coupling!r}")


def dephasing_lambda(
    coupling: str, p1: float, p2: float, p: float, r: float
) -> float:
    """Closed-form most-negative PT eigenvalue for the dephasing channel.

    multilocal: -1/2 sqrt((1-p1) (2 sqrt((1-p2) p2) + 1)) cos^2 r
    global:     -1/2 sqrt((2 sqrt((1-p) p) + 1) (1-p1)^2
                          (2 sqrt((1-p2) p2) + 1)) cos^2 r

    The p2 factor is non-monotonic (it peaks at p2 = 1/2), so this formula
    can exceed the physical bound 1/2; it is evaluated literally and left
    to verification to judge.
    """
    _check(p1, "p1"), _check(p2, "p2"), _check(r, "r", R_MAX)
    c2 = math.cos(r) ** 2
    f2 = 2 * math.sqrt((1 - p2) * p2) + 1
    if coupling == MULTILOCAL:
        return -0.5 * math.sqrt((1 - p1) * f2) * c2
    if coupling == GLOBAL:
        _check(p, "p")
        f = 2 * math.sqrt((1 - p) * p) + 1
        return -0.5 * math.sqrt(f * (1 - p1) ** 2 * f2) * c2
    raise OutOfRange(f"unknown coupling {coupling!r}")


_LAMBDAS = {PHASE_FLIP: phase_flip_lambda, DEPHASING: dephasing_lambda}


@dataclass(frozen=True)
class VerificationReport:
    """Outcome of comparing a closed form against the numeric pipeline."""

    kind: str
    coupling: str
    global_mode: str
    grid_description: str
    tolerance: float
    max_abs_deviation: float
    worst_point: tuple[float, float, float, float]  # (p1, p2, p, r)
    verdict: str


def verify_against_numeric(
    kind: str,
    coupling: str,
    global_mode: str = PRODUCT,
    grid_points: int = 21,
    tol: float = 1e-9,
    variant: str = CORRECTED,
    level_order: str = DEFAULT_LEVEL_ORDER,
) -> VerificationReport:
    """Compare a closed-form eigenvalue against the numeric pipeline.

    At every grid point the analytic lambda is compared with the numeric
    minimum PT eigenvalue and the analytic-implied negativity
    max(0, -lambda) with the numeric negativity; the report records the
    worst deviation across both.  A mismatch is a result, not an error.
    """
    if kind not in ANALYTIC_KINDS:
        raise OutOfRange(f"no closed form available for channel {kind!r}")
    if grid_points < 2:
        raise OutOfRange("grid_points must be at least 2")
    lam = _LAMBDAS[kind]
    axis = np.linspace(0.0, 1.0, grid_points)
    r_axis = np.linspace(0.0, R_MAX, grid_points)
    p_axis = axis if coupling == GLOBAL else np.array([0.0])

    worst = -1.0
    worst_point = (0.0, 0.0, 0.0, 0.0)
    for r in r_axis:
        rho0 = unruh_state(float(r))
        for p1 in axis:
            for p2 in axis:
                for p in p_axis:
                    spec = channels.ChannelSpec(
                        kind=kind,
                        coupling=coupling,
                        p1=float(p1),
                        p2=float(p2),
                        p=float(p),
                        global_mode=global_mode,
                        variant=variant,
                        level_order=level_order,
                    )
                    evolved = channels.evolve(rho0, spec, allow_incomplete=True)
                    spectrum = negativity(evolved)
                    analytic = lam(coupling, float(p1), float(p2), float(p), float(r))
                    dev = max(
                        abs(analytic - spectrum.min_eigenvalue),
                        abs(max(0.0, -analytic) - spectrum.negativity),
                    )
                    if dev > worst:
                        worst = dev
                        worst_point = (float(p1), float(p2), float(p), float(r))
    n = grid_points
    grid_desc = (
        f"{n}x{n}x{n}x{n} (p1, p2, p, r)"
        if coupling == GLOBAL
        else f"{n}x{n}x{n} (p1, p2, r)"
    )
    return VerificationReport(
        kind=kind,
        coupling=coupling,
        global_mode=global_mode if coupling == GLOBAL else "-",
        grid_description=grid_desc,
        tolerance=tol,
        max_abs_deviation=worst,
        worst_point=worst_point,
        verdict=MATCH if worst <= tol else MISMATCH,
    )


def format_report(report: VerificationReport) -> str:
    """Deterministic aligned-text rendering of a VerificationReport."""
    p1, p2, p, r = report.worst_point
    lines = [
        f"channel:           {report.kind}",
        f"coupling:          {report.coupling}",
        f"global mode:       {report.global_mode}",
        f"grid:              {report.grid_description}",
        f"tolerance:         {report.tolerance:.12g}",
        f"max abs deviation: {report.max_abs_deviation:.12g}",
        f"worst point:       p1={p1:.12g} p2={p2:.12g} p={p:.12g} r={r:.12g}",
        f"verdict:           {report.verdict}",
    ]
    return "\n".join(lines) + "\n"
