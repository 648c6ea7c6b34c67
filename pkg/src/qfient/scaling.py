"""Schedule sweeps over register size and log-log scaling-exponent fits."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ConsistencyError, ValidationError
from .linalg import default_dim_cap
from .qfi import qcrb, qfi_eigen
from .states import (
    ScheduleSpec,
    analytic_gme,
    analytic_qfi,
    build_state,
    local_hamiltonian,
    r_leb,
    schedule_instantiate,
)

MIN_GRID_POINTS = 6
DEFAULT_FIT_MIN_N = 100
CROSS_CHECK_RTOL = 1e-6


@dataclass(frozen=True)
class ScalingRecord:
    """One swept register size with its scheduled parameters and closed-form quantifiers."""

    n: int
    p: float | None
    l: int | None
    qfi: float
    e_g: float
    r_leb: float
    qcrb: float


@dataclass(frozen=True)
class ScalingFit:
    """Least-squares power-law fit of QFI against register size on log-log axes."""

    exponent: float
    intercept: float
    residual_rms: float
    n_min: int
    n_max: int
    points_used: int


@dataclass(frozen=True)
class TargetVerification:
    target: float
    exponent: float
    tol: float
    slack: float
    passed: bool


def default_n_grid(n_min: int = 100, n_max: int = 10**6, points_per_decade: int = 2) -> tuple[int, ...]:
    """Geometric integer grid, log-uniform from n_min to n_max inclusive."""
    lo, hi = math.log10(n_min), math.log10(n_max)
    count = int(round((hi - lo) * points_per_decade)) + 1
    grid = sorted({int(round(10**e)) for e in np.linspace(lo, hi, count)})
    return tuple(grid)


def sweep(
    kind: str,
    schedule: ScheduleSpec,
    n_grid,
    *,
    dim_cap: int | None = None,
    cross_check_rtol: float = CROSS_CHECK_RTOL,
) -> list[ScalingRecord]:
    """Instantiate the schedule on every grid point and collect closed-form quantifiers.

    Grid points whose dense dimension fits the cap are cross-checked against the
    eigendecomposition QFI; a closed form that disagrees raises.
    """
    grid = [int(n) for n in n_grid]
    if len(grid) < MIN_GRID_POINTS:
        raise ValidationError(f"need at least {MIN_GRID_POINTS} grid points, got {len(grid)}")
    if any(b <= a for a, b in zip(grid, grid[1:])):
        raise ValidationError("grid must be strictly ascending")
    cap = default_dim_cap() if dim_cap is None else dim_cap
    records = []
    for n in grid:
        spec = schedule_instantiate(schedule, n, kind)
        qfi_value = analytic_qfi(spec, n)
        if 2**n <= cap:
            dense = qfi_eigen(build_state(spec, n, dim_cap=cap), local_hamiltonian(n, dim_cap=cap)).value
            if abs(dense - qfi_value) > cross_check_rtol * max(1.0, abs(qfi_value)):
                raise ConsistencyError(
                    f"closed-form QFI {qfi_value!r} disagrees with dense value {dense!r} at N={n}"
                )
        records.append(
            ScalingRecord(
                n=n,
                p=spec.p,
                l=spec.l,
                qfi=qfi_value,
                e_g=analytic_gme(spec, n).value,
                r_leb=r_leb(spec, n).value,
                qcrb=qcrb(qfi_value, 1) if qfi_value > 0 else math.inf,
            )
        )
    return records


def fit_exponent(records, *, min_n: int = DEFAULT_FIT_MIN_N) -> ScalingFit:
    """Ordinary least squares of log QFI against log N; small-N transients are excluded."""
    records = list(records)
    if len(records) < MIN_GRID_POINTS:
        raise ValidationError(f"need at least {MIN_GRID_POINTS} records, got {len(records)}")
    bad = [r.n for r in records if r.qfi <= 0]
    if bad:
        raise ValidationError(f"records with nonpositive QFI cannot be fit on log axes: N={bad}")
    pts = [r for r in records if r.n >= min_n]
    if len(pts) < 2:
        raise ValidationError(f"fewer than two records at N >= {min_n}")
    x = np.log([r.n for r in pts])
    y = np.log([r.qfi for r in pts])
    slope, intercept = np.polyfit(x, y, 1)
    resid = y - (slope * x + intercept)
    return ScalingFit(
        exponent=float(slope),
        intercept=float(intercept),
        residual_rms=float(np.sqrt(np.mean(resid**2))),
        n_min=min(r.n for r in pts),
        n_max=max(r.n for r in pts),
        points_used=len(pts),
    )


def verify_target(fit: ScalingFit, schedule: ScheduleSpec, tol: float) -> TargetVerification:
    """Compare the fitted exponent against the schedule target 2 - eps1 - 2 eps2."""
    if tol <= 0:
        raise ValidationError(f"tolerance must be positive, got {tol}")
    target = 2.0 - schedule.eps1 - 2.0 * schedule.eps2
    gap = abs(fit.exponent - target)
    return TargetVerification(
        target=target, exponent=fit.exponent, tol=tol, slack=tol - gap, passed=gap <= tol
    )
