"""State-space distances: Uhlmann fidelity, Bures distance, trace distance, and their chain."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import ConsistencyError, ValidationError
from .linalg import hermitian_part, matrix_sqrt_psd, require_density, trace_norm

CHAIN_SLACK_TOL = 1e-9
# Tr(rho^2) threshold matching a top eigenvalue within 1e-10 of 1
_PURITY_TR2_THRESHOLD = 1.0 - 2e-10


def _validated_pair(rho, sigma):
    rho = require_density(rho)
    sigma = require_density(sigma)
    if rho.shape != sigma.shape:
        raise ValidationError(f"dimension mismatch: {rho.shape} vs {sigma.shape}")
    return rho, sigma


def _top_eigenvector(rho: np.ndarray) -> np.ndarray:
    _, vec = np.linalg.eigh(rho)
    return vec[:, -1]


def fidelity(rho, sigma) -> float:
    """Uhlmann fidelity Tr sqrt(sqrt(σ) ρ sqrt(σ)), clamped into [0, 1].

    Pure arguments take the exact fast paths |<ψ|φ>| and sqrt(<φ|ρ|φ>); the general
    route square-roots one factor and clamps the spectrum of the product at zero.
    """
    rho, sigma = _validated_pair(rho, sigma)
    pure_rho = float(np.vdot(rho, rho).real) >= _PURITY_TR2_THRESHOLD
    pure_sigma = float(np.vdot(sigma, sigma).real) >= _PURITY_TR2_THRESHOLD
    if pure_rho and pure_sigma:
        value = abs(np.vdot(_top_eigenvector(rho), _top_eigenvector(sigma)))
    elif pure_rho or pure_sigma:
        phi = _top_eigenvector(rho if pure_rho else sigma)
        other = sigma if pure_rho else rho
        value = math.sqrt(max(0.0, float(np.vdot(phi, other @ phi).real)))
    else:
        s = matrix_sqrt_psd(sigma)
        w = np.linalg.eigvalsh(hermitian_part(s @ rho @ s))
        value = float(np.sqrt(np.clip(w, 0.0, None)).sum())
    return min(max(value, 0.0), 1.0)


def bures(rho, sigma) -> float:
    """Bures distance sqrt(2 (1 - F))."""
    return math.sqrt(2.0 * max(0.0, 1.0 - fidelity(rho, sigma)))


def trace_distance(rho, sigma) -> float:
    """Half the trace norm of ρ - σ."""
    rho, sigma = _validated_pair(rho, sigma)
    return 0.5 * trace_norm(rho - sigma)


@dataclass(frozen=True)
class DistanceReport:
    """All three distances for a pair plus the slack of each link of the inequality chain.

    The chain is 1 - F <= T <= sqrt(1 - F²) <= D_B <= sqrt(2 T). Slacks of the
    square-root links are evaluated in squared form (mathematically equivalent), so
    that round-off on F is not amplified through the square root; every slack is
    nonnegative up to numerical tolerance.
    """

    fidelity: float
    bures: float
    trace: float
    chain_slacks: dict[str, float] = field(default_factory=dict)


def distance_report(rho, sigma) -> DistanceReport:
    f = fidelity(rho, sigma)
    t = trace_distance(rho, sigma)
    d_b = math.sqrt(2.0 * max(0.0, 1.0 - f))
    slacks = {
        "one-minus-f-below-trace": t - (1.0 - f),
        "trace-below-root": (1.0 - f * f) - t * t,
        "root-below-bures": d_b * d_b - (1.0 - f * f),
        "bures-below-root-2t": 2.0 * t - d_b * d_b,
    }
    worst = min(slacks.values())
    if worst < -CHAIN_SLACK_TOL:
        raise ConsistencyError(f"distance inequality chain violated numerically: {slacks}")
    return DistanceReport(fidelity=f, bures=d_b, trace=t, chain_slacks=slacks)
