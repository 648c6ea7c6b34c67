import math

import pytest

from qfient.errors import ValidationError
from qfient.scaling import (
    ScalingRecord,
    default_n_grid,
    fit_exponent,
    sweep,
    verify_target,
)
from qfient.states import GHZ, TAILORED_PURE, TAILORED_WERNER, WERNER_GHZ, ScheduleSpec

GRID = (100, 316, 1000, 3162, 10_000, 31_623, 100_000, 316_228, 1_000_000)


def test_default_grid_shape():
    grid = default_n_grid()
    assert grid[0] == 100 and grid[-1] == 10**6
    assert len(grid) >= 6
    assert all(b > a for a, b in zip(grid, grid[1:]))


def test_sweep_tailored_pure_records():
    schedule = ScheduleSpec(eps1=0.1, eps2=0.1)
    records = sweep(TAILORED_PURE, schedule, GRID)
    for rec in records:
        p_eff = min(rec.p, 1 - rec.p)
        assert rec.qfi == pytest.approx(4 * p_eff * (1 - p_eff) * rec.l**2, rel=1e-12)
        assert rec.e_g == pytest.approx(p_eff, abs=1e-15)
        assert rec.r_leb == pytest.approx(rec.l / rec.n, abs=1e-15)
        assert rec.qcrb == pytest.approx(1 / rec.qfi, rel=1e-12)


def test_sweep_ghz_exact_square_law():
    schedule = ScheduleSpec(eps1=0.5, eps2=0.5)  # ignored by the ghz family
    records = sweep(GHZ, schedule, GRID)
    for rec in records:
        assert rec.qfi == float(rec.n) ** 2
    fit = fit_exponent(records)
    assert fit.exponent == pytest.approx(2.0, abs=1e-10)
    assert fit.residual_rms <= 1e-6


def test_sweep_dense_cross_check_small_registers():
    schedule = ScheduleSpec(eps1=0.1, eps2=0.1)
    grid = (5, 6, 7, 8, 9, 10)
    records = sweep(TAILORED_WERNER, schedule, grid, dim_cap=2**10)
    assert [r.n for r in records] == list(grid)
    assert all(r.qfi > 0 for r in records)


def test_sweep_validates_grid():
    schedule = ScheduleSpec(eps1=0.1, eps2=0.1)
    with pytest.raises(ValidationError):
        sweep(GHZ, schedule, (100, 200, 300))
    with pytest.raises(ValidationError):
        sweep(GHZ, schedule, (100, 200, 300, 400, 500, 400))


def test_fit_exponent_synthetic_power_law():
    records = [
        ScalingRecord(n=n, p=None, l=None, qfi=3.0 * n**1.7, e_g=0.0, r_leb=0.0, qcrb=0.0)
        for n in GRID
    ]
    fit = fit_exponent(records)
    assert fit.exponent == pytest.approx(1.7, abs=1e-10)
    assert fit.residual_rms <= 1e-10
    assert fit.intercept == pytest.approx(math.log(3.0), abs=1e-9)


def test_fit_exponent_rejects_nonpositive_qfi():
    records = [
        ScalingRecord(n=n, p=None, l=None, qfi=0.0, e_g=0.0, r_leb=0.0, qcrb=math.inf)
        for n in GRID
    ]
    with pytest.raises(ValidationError):
        fit_exponent(records)


def test_fit_exponent_needs_enough_records():
    records = [
        ScalingRecord(n=n, p=None, l=None, qfi=float(n), e_g=0.0, r_leb=0.0, qcrb=1 / n)
        for n in (100, 1000)
    ]
    with pytest.raises(ValidationError):
        fit_exponent(records)


def test_fit_excludes_small_registers():
    records = [
        ScalingRecord(n=n, p=None, l=None, qfi=float(n) ** 2, e_g=0.0, r_leb=0.0, qcrb=0.0)
        for n in (10, 20, 100, 1000, 10_000, 100_000)
    ]
    fit = fit_exponent(records)
    assert fit.n_min == 100
    assert fit.points_used == 4


def test_werner_schedule_hits_target():
    # the large-register mixture QFI is an almost exact power law
    schedule = ScheduleSpec(eps1=0.3, eps2=0.1)
    records = sweep(WERNER_GHZ, schedule, GRID)
    fit = fit_exponent(records)
    assert fit.exponent == pytest.approx(2.0 - 0.3, abs=1e-6)
    check = verify_target(fit, ScheduleSpec(eps1=0.3, eps2=1e-9), 0.05)
    assert check.target == pytest.approx(1.7, abs=1e-8)
    assert check.passed


def test_verify_target_formula():
    records = [
        ScalingRecord(n=n, p=None, l=None, qfi=float(n) ** 1.4, e_g=0.0, r_leb=0.0, qcrb=0.0)
        for n in GRID
    ]
    fit = fit_exponent(records)
    check = verify_target(fit, ScheduleSpec(eps1=0.2, eps2=0.2), tol=0.05)
    assert check.target == pytest.approx(1.4)
    assert check.passed and check.slack >= 0
    with pytest.raises(ValidationError):
        verify_target(fit, ScheduleSpec(eps1=0.2, eps2=0.2), tol=0.0)


def test_headline_phenomenon_vanishing_entanglement_super_classical_fit():
    # entanglement and block fraction both decay while the fitted exponent stays above 1
    schedule = ScheduleSpec(eps1=0.2, eps2=0.2)
    records = sweep(TAILORED_PURE, schedule, GRID)
    e_gs = [r.e_g for r in records]
    r_lebs = [r.r_leb for r in records]
    assert all(b < a for a, b in zip(e_gs, e_gs[1:]))
    assert all(b < a for a, b in zip(r_lebs, r_lebs[1:]))
    assert fit_exponent(records).exponent > 1.0
