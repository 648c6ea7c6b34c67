"""Certified inequality evaluation: QFI continuity bounds, producibility caps, and audits."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ValidationError
from .geometry import bures, fidelity, trace_distance
from .linalg import default_dim_cap, operator_norm, projector, require_density, require_hermitian
from .qfi import qfi_eigen
from .entanglement import ek_prod_lower_bound
from .states import (
    StateFamilySpec,
    analytic_gme,
    analytic_qfi,
    build_state,
    local_hamiltonian,
    r_leb,
)

PURITY_EIG_THRESHOLD = 1.0 - 1e-10
AUDIT_TOL_FACTOR = 1e-8

METRICS = ("fidelity-root", "bures", "trace-root")

# Continuity constants: general pairs / one state pure, for the ||H||²- and the
# N²-normalized (local-generator) forms.
XI_GENERAL = 32.0
XI_ONE_PURE = 24.0
XI_GENERAL_LOCAL = 8.0
XI_ONE_PURE_LOCAL = 6.0


@dataclass(frozen=True)
class ContinuityVariant:
    """One normalized form of the QFI continuity bound."""

    metric: str
    xi: float
    pure_flags: tuple[bool, bool]
    local: bool


@dataclass(frozen=True)
class BoundCheck:
    name: str
    bound: float
    observed: float
    slack: float
    passed: bool


@dataclass(frozen=True)
class StateAuditReport:
    """All applicable caps and bounds evaluated on one family member."""

    kind: str
    p: float | None
    l: int | None
    n: int
    k: int
    qfi: float
    qfi_method: str
    gme: float
    gme_is_exact: bool
    r_leb: float
    r_leb_is_exact: bool
    analytic_only: bool
    checks: tuple[BoundCheck, ...]
    passed: bool


@dataclass(frozen=True)
class PairAuditReport:
    """Continuity bounds evaluated on a pair of states."""

    label_rho: str
    label_sigma: str
    n: int | None
    qfi_rho: float
    qfi_sigma: float
    fidelity: float
    bures: float
    trace_distance: float
    checks: tuple[BoundCheck, ...]
    passed: bool


def is_pure_state(rho) -> bool:
    """Purity test: top eigenvalue within 1e-10 of 1."""
    rho = require_density(rho)
    return float(np.linalg.eigvalsh(rho).max()) >= PURITY_EIG_THRESHOLD


def _as_density(state) -> tuple[np.ndarray, bool]:
    arr = np.asarray(state, dtype=complex)
    if arr.ndim == 1:
        return projector(arr), True
    rho = require_density(arr)
    return rho, float(np.linalg.eigvalsh(rho).max()) >= PURITY_EIG_THRESHOLD


def _resolve_pure_flags(detected, declared) -> tuple[bool, bool]:
    if declared is None:
        return detected
    declared = (bool(declared[0]), bool(declared[1]))
    for flag, pure, which in zip(declared, detected, ("first", "second")):
        if flag and not pure:
            raise ValidationError(f"pure flag set on mixed input ({which} argument)")
    return declared


def _metric_term(rho, sigma, metric: str) -> float:
    if metric == "fidelity-root":
        f = fidelity(rho, sigma)
        return math.sqrt(max(0.0, 1.0 - f * f))
    if metric == "bures":
        return bures(rho, sigma)
    if metric == "trace-root":
        return math.sqrt(2.0 * trace_distance(rho, sigma))
    raise ValidationError(f"unknown metric {metric!r}; expected one of {METRICS} or 'auto'")


def _continuity(rho, sigma, metric, pure_flags, scale, xi_general, xi_pure):
    rho, pure_rho = _as_density(rho)
    sigma, pure_sigma = _as_density(sigma)
    if rho.shape != sigma.shape:
        raise ValidationError(f"dimension mismatch: {rho.shape} vs {sigma.shape}")
    flags = _resolve_pure_flags((pure_rho, pure_sigma), pure_flags)
    xi = xi_pure if any(flags) else xi_general
    if metric == "auto":
        metric = "fidelity-root"  # tightest link of the chain
    return xi * _metric_term(rho, sigma, metric) * scale


def continuity_bound(rho, sigma, h, metric: str = "auto", pure_flags=None) -> float:
    """Upper bound on |F_Q[ρ;H] - F_Q[σ;H]| normalized by the squared generator norm.

    The constant is 32 for general pairs and tightens to 24 when either state is
    pure; ``metric`` selects sqrt(1-F²), the Bures distance, or sqrt of the trace
    norm of the difference (``auto`` picks the tightest, sqrt(1-F²)).
    """
    h = require_hermitian(h)
    scale = operator_norm(h) ** 2
    return _continuity(rho, sigma, metric, pure_flags, scale, XI_GENERAL, XI_ONE_PURE)


def continuity_bound_local(rho, sigma, n: int, metric: str = "auto", pure_flags=None) -> float:
    """Continuity bound for local per-site generators of norm <= 1/2: constant 8 (6 if one
    state is pure) times the metric term times N²."""
    if int(n) != n or n < 1:
        raise ValidationError(f"register size must be a positive integer, got {n}")
    return _continuity(rho, sigma, metric, pure_flags, float(n) ** 2, XI_GENERAL_LOCAL, XI_ONE_PURE_LOCAL)


def continuity_bounds_all(rho, sigma, *, h=None, n: int | None = None):
    """Evaluate every continuity variant that applies; returns (variant, bound) pairs."""
    if h is None and n is None:
        raise ValidationError("provide a generator h, a register size n, or both")
    rho_d, pure_rho = _as_density(rho)
    sigma_d, pure_sigma = _as_density(sigma)
    flags = (pure_rho, pure_sigma)
    out = []
    if h is not None:
        h = require_hermitian(h)
        scale = operator_norm(h) ** 2
        xi = XI_ONE_PURE if any(flags) else XI_GENERAL
        for metric in METRICS:
            variant = ContinuityVariant(metric=metric, xi=xi, pure_flags=flags, local=False)
            out.append((variant, xi * _metric_term(rho_d, sigma_d, metric) * scale))
    if n is not None:
        xi = XI_ONE_PURE_LOCAL if any(flags) else XI_GENERAL_LOCAL
        for metric in METRICS:
            variant = ContinuityVariant(metric=metric, xi=xi, pure_flags=flags, local=True)
            out.append((variant, xi * _metric_term(rho_d, sigma_d, metric) * float(n) ** 2))
    return out


@dataclass(frozen=True)
class KprodCap:
    """QFI caps for k-producible states: the exact floor form and its relaxations."""

    floor_form: float
    linear_form: float
    rleb_form: float


def kprod_qfi_cap(n: int, k: int) -> KprodCap:
    """floor(N/k) k² + (N - floor(N/k) k)², with the kN and (k/N) N² relaxations."""
    if int(n) != n or int(k) != k or not 1 <= k <= n:
        raise ValidationError(f"need integers 1 <= k <= N, got k={k}, N={n}")
    q = n // k
    floor_form = float(q * k * k + (n - q * k) ** 2)
    return KprodCap(floor_form=floor_form, linear_form=float(k * n), rleb_form=(k / n) * float(n) ** 2)


def gme_qfi_cap(n: int, k: int, ek: float) -> float:
    """QFI cap kN + 6 sqrt(E_k) N² from the k-block geometric entanglement."""
    if int(n) != n or int(k) != k or not 1 <= k <= n:
        raise ValidationError(f"need integers 1 <= k <= N, got k={k}, N={n}")
    if not 0.0 <= ek <= 1.0:
        raise ValidationError(f"entanglement value must lie in [0, 1], got {ek}")
    return k * n + 6.0 * math.sqrt(ek) * float(n) ** 2


def _check(name: str, bound: float, observed: float, tol: float) -> BoundCheck:
    slack = bound - observed
    return BoundCheck(name=name, bound=bound, observed=observed, slack=slack, passed=slack >= -tol)


def audit_state(spec: StateFamilySpec, n: int, k: int = 1, *, dim_cap: int | None = None) -> StateAuditReport:
    """Evaluate every applicable cap and bound on one family member.

    Uses the dense QFI when 2^N fits the cap and the closed form otherwise; a check
    fails only when its slack drops below -1e-8 N².
    """
    cap = default_dim_cap() if dim_cap is None else dim_cap
    if not 1 <= k <= n:
        raise ValidationError(f"need 1 <= k <= N, got k={k}, N={n}")
    analytic_only = 2**n > cap
    if analytic_only:
        qfi_value = analytic_qfi(spec, n)
        method = "analytic"
    else:
        result = qfi_eigen(build_state(spec, n, dim_cap=cap), local_hamiltonian(n, dim_cap=cap))
        qfi_value, method = result.value, result.method
    gme = analytic_gme(spec, n)
    rleb = r_leb(spec, n)
    l_state = min(n, max(1, round(rleb.value * n)))
    tol = AUDIT_TOL_FACTOR * float(n) ** 2
    caps = kprod_qfi_cap(n, l_state)
    checks = (
        _check("heisenberg-cap", float(n) ** 2, qfi_value, tol),
        _check("block-producibility-cap", caps.floor_form, qfi_value, tol),
        _check("leb-fraction-cap", rleb.value * float(n) ** 2, qfi_value, tol),
        _check("gme-cap", gme_qfi_cap(n, k, gme.value), qfi_value, tol),
        _check("gme-lower-bound", gme.value, ek_prod_lower_bound(qfi_value, n, k), tol),
    )
    return StateAuditReport(
        kind=spec.kind,
        p=spec.p,
        l=spec.l,
        n=n,
        k=k,
        qfi=qfi_value,
        qfi_method=method,
        gme=gme.value,
        gme_is_exact=gme.is_exact,
        r_leb=rleb.value,
        r_leb_is_exact=rleb.is_exact,
        analytic_only=analytic_only,
        checks=checks,
        passed=all(c.passed for c in checks),
    )


def audit_pair(rho, sigma, *, h=None, n: int | None = None, labels=("rho", "sigma")) -> PairAuditReport:
    """Evaluate every applicable continuity bound on a pair sharing one Hilbert space."""
    if h is None:
        if n is None:
            raise ValidationError("provide a generator h, a register size n, or both")
        h = local_hamiltonian(n)
    else:
        h = require_hermitian(h)
    rho_d, _ = _as_density(rho)
    sigma_d, _ = _as_density(sigma)
    if rho_d.shape != sigma_d.shape or rho_d.shape != h.shape:
        raise ValidationError("state and generator dimensions must all match")
    qfi_rho = qfi_eigen(rho_d, h).value
    qfi_sigma = qfi_eigen(sigma_d, h).value
    observed = abs(qfi_rho - qfi_sigma)
    tol = AUDIT_TOL_FACTOR * (float(n) ** 2 if n is not None else 1.0 + 4.0 * operator_norm(h) ** 2)
    checks = []
    for variant, bound in continuity_bounds_all(rho_d, sigma_d, h=h, n=n):
        name = f"continuity-{variant.metric}-{'local' if variant.local else 'hnorm'}"
        checks.append(_check(name, bound, observed, tol))
    return PairAuditReport(
        label_rho=labels[0],
        label_sigma=labels[1],
        n=n,
        qfi_rho=qfi_rho,
        qfi_sigma=qfi_sigma,
        fidelity=fidelity(rho_d, sigma_d),
        bures=bures(rho_d, sigma_d),
        trace_distance=trace_distance(rho_d, sigma_d),
        checks=tuple(checks),
        passed=all(c.passed for c in checks),
    )
