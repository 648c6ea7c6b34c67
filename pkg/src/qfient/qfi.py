"""Quantum Fisher information for unitary phase encoding, computed by independent routes.

The generator enters as a Hermitian matrix H; the encoded phase never needs to be
materialized because the QFI of exp(-iHφ) ρ exp(iHφ) is φ-independent.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ValidationError
from .linalg import hermitian_part, require_density, require_hermitian, require_state_vector
from .sampling import haar_unitary, rng_from_seed

RANK_TOL_FACTOR = 1e-12
_ENSEMBLE_WEIGHT_FLOOR = 1e-15


@dataclass(frozen=True)
class QfiResult:
    value: float
    method: str
    rank_tolerance_used: float


@dataclass(frozen=True)
class SldOperator:
    """Symmetric logarithmic derivative L solving dρ/dφ = (Lρ + ρL)/2 on the support of ρ."""

    matrix: np.ndarray
    rank_tolerance_used: float


def _validated_pair(rho, h):
    rho = require_density(rho)
    h = require_hermitian(h)
    if rho.shape != h.shape:
        raise ValidationError(f"dimension mismatch: state {rho.shape}, generator {h.shape}")
    return rho, h


def _pair_weights(lam: np.ndarray, rank_tol_factor: float):
    """Mask and sum λ_k + λ_l for eigenvalue pairs on the support."""
    tol = rank_tol_factor * float(lam.max())
    s = lam[:, None] + lam[None, :]
    return s, s >= tol, tol


def qfi_eigen(rho, h, *, rank_tol_factor: float = RANK_TOL_FACTOR) -> QfiResult:
    """QFI from the eigendecomposition of ρ: 2 Σ (λ_k-λ_l)²/(λ_k+λ_l) |<ξ_k|H|ξ_l>|²."""
    rho, h = _validated_pair(rho, h)
    lam, vec = np.linalg.eigh(rho)
    w = vec.conj().T @ h @ vec
    s, mask, tol = _pair_weights(lam, rank_tol_factor)
    num = (lam[:, None] - lam[None, :]) ** 2
    coef = np.zeros_like(s)
    coef[mask] = num[mask] / s[mask]
    value = 2.0 * float(np.sum(coef * np.abs(w) ** 2))
    return QfiResult(value=value, method="eigendecomposition", rank_tolerance_used=tol)


def qfi_pure(psi, h) -> QfiResult:
    """QFI of a pure state: four times the variance of the generator."""
    psi = require_state_vector(psi)
    h = require_hermitian(h)
    if h.shape[0] != psi.shape[0]:
        raise ValidationError(f"dimension mismatch: state {psi.shape}, generator {h.shape}")
    hpsi = h @ psi
    mean = float(np.vdot(psi, hpsi).real)
    value = 4.0 * (float(np.vdot(hpsi, hpsi).real) - mean**2)
    return QfiResult(value=max(value, 0.0), method="pure-variance", rank_tolerance_used=0.0)


def sld(rho, h, *, rank_tol_factor: float = RANK_TOL_FACTOR) -> SldOperator:
    """SLD for the generator H at φ = 0, where dρ/dφ = -i[H, ρ]."""
    rho, h = _validated_pair(rho, h)
    lam, vec = np.linalg.eigh(rho)
    w = vec.conj().T @ h @ vec
    s, mask, tol = _pair_weights(lam, rank_tol_factor)
    # <ξ_k| -i[H,ρ] |ξ_l> = i (λ_k - λ_l) <ξ_k|H|ξ_l>
    drho = 1j * (lam[:, None] - lam[None, :]) * w
    l_eig = np.zeros_like(w)
    l_eig[mask] = 2.0 * drho[mask] / s[mask]
    matrix = hermitian_part(vec @ l_eig @ vec.conj().T)
    return SldOperator(matrix=matrix, rank_tolerance_used=tol)


def qfi_sld(rho, h, *, rank_tol_factor: float = RANK_TOL_FACTOR) -> QfiResult:
    """QFI as Tr(ρ L²) with L the symmetric logarithmic derivative."""
    op = sld(rho, h, rank_tol_factor=rank_tol_factor)
    rho = require_density(rho)
    value = float(np.trace(rho @ op.matrix @ op.matrix).real)
    return QfiResult(value=value, method="sld", rank_tolerance_used=op.rank_tolerance_used)


def _support(rho, rank_tol_factor: float):
    lam, vec = np.linalg.eigh(rho)
    tol = rank_tol_factor * float(lam.max())
    keep = lam > tol
    return lam[keep], vec[:, keep], tol


def optimal_env_hamiltonian(rho, h, *, rank_tol_factor: float = RANK_TOL_FACTOR) -> np.ndarray:
    """Environment generator minimizing the purification variance; acts on the support of ρ.

    Entries are h_ij = -2 sqrt(λ_i λ_j)/(λ_i + λ_j) <ξ_j|H|ξ_i>, so its operator norm
    never exceeds the norm of H.
    """
    rho, h = _validated_pair(rho, h)
    lam, vec, _ = _support(rho, rank_tol_factor)
    w = vec.conj().T @ h @ vec
    root = np.sqrt(lam)
    coupling = root[:, None] * root[None, :] / (lam[:, None] + lam[None, :])
    return hermitian_part(-2.0 * coupling * w.T)


def qfi_purification(rho, h, *, rank_tol_factor: float = RANK_TOL_FACTOR) -> QfiResult:
    """QFI evaluated on the canonical purification with the optimal environment generator.

    The purification Σ sqrt(λ_i) |ξ_i>|i> is kept as a d×rank matrix M, so
    (H ⊗ 1 + 1 ⊗ h_E)|ψ> becomes H M + M h_Eᵀ and the value is 4 ||H M + M h_Eᵀ||_F².
    """
    rho, h = _validated_pair(rho, h)
    lam, vec, tol = _support(rho, rank_tol_factor)
    w = vec.conj().T @ h @ vec
    root = np.sqrt(lam)
    coupling = root[:, None] * root[None, :] / (lam[:, None] + lam[None, :])
    h_env = hermitian_part(-2.0 * coupling * w.T)
    m = vec * root
    phi = h @ m + m @ h_env.T
    value = 4.0 * float(np.sum(np.abs(phi) ** 2))
    return QfiResult(value=value, method="purification", rank_tolerance_used=tol)


def _ensemble_average(members: np.ndarray, h: np.ndarray) -> float:
    """Σ_k p_k · 4 Var(H, member_k) for unnormalized ensemble columns with p_k = ||member_k||²."""
    weights = np.sum(np.abs(members) ** 2, axis=0).real
    h_members = h @ members
    second = np.sum(np.abs(h_members) ** 2, axis=0).real
    first = np.sum(members.conj() * h_members, axis=0).real
    keep = weights > _ENSEMBLE_WEIGHT_FLOOR
    return 4.0 * float(np.sum(second[keep] - first[keep] ** 2 / weights[keep]))


def convex_roof_upper_bound(
    rho,
    h,
    samples: int,
    seed: int,
    *,
    env_factor: int = 2,
    rank_tol_factor: float = RANK_TOL_FACTOR,
) -> float:
    """Sampled upper bound on the convex-roof form of the QFI.

    Ensembles realizing ρ are generated by applying random isometries (columns of
    Haar unitaries on an environment of ``env_factor`` times the rank) to the
    canonical purification; sample 0 is always the eigen-ensemble. The minimum over
    samples upper-bounds the QFI and is deterministic for a fixed seed.
    """
    if samples < 1:
        raise ValidationError(f"samples must be >= 1, got {samples}")
    rho, h = _validated_pair(rho, h)
    lam, vec, _ = _support(rho, rank_tol_factor)
    rank = lam.size
    m0 = vec * np.sqrt(lam)
    best = _ensemble_average(m0, h)
    rng = rng_from_seed(seed)
    env_dim = max(2, env_factor * rank)
    for _ in range(samples - 1):
        iso = haar_unitary(env_dim, rng)[:, :rank]
        best = min(best, _ensemble_average(m0 @ iso.T, h))
    return float(best)


def qcrb(qfi: float, nu: int) -> float:
    """Precision floor 1/(ν F_Q); zero information signals unbounded variance (inf)."""
    if qfi < 0:
        raise ValidationError(f"QFI must be nonnegative, got {qfi}")
    if int(nu) != nu or nu < 1:
        raise ValidationError(f"repetition count must be a positive integer, got {nu}")
    if qfi == 0:
        return math.inf
    return 1.0 / (nu * qfi)
