"""Dense complex linear algebra: validation, eigendecomposition, matrix functions, norms."""

from __future__ import annotations

import os
from dataclasses import dataclass

import numpy as np

from .errors import CapacityError, NotPsdError, ValidationError

HERMITICITY_ATOL = 1e-12
TRACE_ATOL = 1e-12
STATE_NORM_ATOL = 1e-12
PSD_EIG_TOL = 1e-10
RECONSTRUCTION_TOL = 1e-10

DEFAULT_DIM_CAP = 2**12
DIM_CAP_ENV = "QFIENT_DENSE_CAP"


def default_dim_cap() -> int:
    """Dense dimension cap, overridable through the QFIENT_DENSE_CAP environment variable."""
    raw = os.environ.get(DIM_CAP_ENV)
    if raw is None:
        return DEFAULT_DIM_CAP
    try:
        cap = int(raw)
    except ValueError as exc:
        raise ValidationError(f"{DIM_CAP_ENV} must be an integer, got {raw!r}") from exc
    if cap < 1:
        raise ValidationError(f"{DIM_CAP_ENV} must be positive, got {cap}")
    return cap


def check_capacity(dim: int, dim_cap: int | None = None) -> None:
    cap = default_dim_cap() if dim_cap is None else dim_cap
    if dim > cap:
        raise CapacityError(f"dimension {dim} exceeds dense cap {cap}")


def as_square(a) -> np.ndarray:
    arr = np.asarray(a, dtype=complex)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise ValidationError(f"expected a square matrix, got shape {arr.shape}")
    return arr


def hermitian_part(a: np.ndarray) -> np.ndarray:
    """Return (A + A†)/2."""
    return (a + a.conj().T) / 2


def require_hermitian(a) -> np.ndarray:
    """Validate hermiticity within tolerance and return the exactly hermitized matrix."""
    a = as_square(a)
    asym = float(np.abs(a - a.conj().T).max())
    if asym > HERMITICITY_ATOL * (1 + float(np.abs(a).max())):
        # max-entry only lower-bounds the operator norm; settle borderline cases exactly
        opn = float(np.abs(np.linalg.eigvalsh(hermitian_part(a))).max())
        if asym > HERMITICITY_ATOL * (1 + opn):
            raise ValidationError(f"matrix is not Hermitian within tolerance: asymmetry {asym:.3e}")
    return hermitian_part(a)


def require_density(rho) -> np.ndarray:
    """Validate a density matrix: Hermitian, unit trace, spectrum above the PSD tolerance."""
    rho = require_hermitian(rho)
    tr = float(np.trace(rho).real)
    if abs(tr - 1) > TRACE_ATOL:
        raise ValidationError(f"density matrix trace is {tr!r}, not 1")
    low = float(np.linalg.eigvalsh(rho).min())
    if low < -PSD_EIG_TOL:
        raise NotPsdError(f"density matrix has eigenvalue {low:.3e} below -{PSD_EIG_TOL}")
    return rho


def require_state_vector(psi) -> np.ndarray:
    psi = np.asarray(psi, dtype=complex)
    if psi.ndim != 1:
        raise ValidationError(f"expected a vector, got shape {psi.shape}")
    nrm = float(np.linalg.norm(psi))
    if abs(nrm - 1) > STATE_NORM_ATOL:
        raise ValidationError(f"state vector norm is {nrm!r}, not 1")
    return psi


def projector(psi) -> np.ndarray:
    """|psi><psi| as a dense matrix."""
    psi = require_state_vector(psi)
    return np.outer(psi, psi.conj())


@dataclass(frozen=True)
class EigenSystem:
    """Spectral decomposition of a Hermitian matrix.

    ``values`` are sorted ascending; column ``k`` of ``vectors`` is the eigenvector
    of ``values[k]``.
    """

    values: np.ndarray
    vectors: np.ndarray

    def reconstruct(self) -> np.ndarray:
        return (self.vectors * self.values) @ self.vectors.conj().T


def eigendecompose(a) -> EigenSystem:
    """Eigendecompose a Hermitian matrix (deterministic LAPACK path, ascending order)."""
    a = require_hermitian(a)
    values, vectors = np.linalg.eigh(a)
    return EigenSystem(values=values, vectors=vectors)


def matrix_sqrt_psd(a) -> np.ndarray:
    """Principal square root of a PSD matrix; eigenvalues in [-tol, 0) are clamped to 0."""
    es = eigendecompose(a)
    if float(es.values.min()) < -PSD_EIG_TOL:
        raise NotPsdError(f"matrix has eigenvalue {float(es.values.min()):.3e}, not PSD")
    w = np.sqrt(np.clip(es.values, 0.0, None))
    return hermitian_part((es.vectors * w) @ es.vectors.conj().T)


def trace_norm(a) -> float:
    """Sum of singular values; for Hermitian input this equals the absolute eigenvalue sum."""
    return float(np.linalg.svd(as_square(a), compute_uv=False).sum())


def operator_norm(a) -> float:
    """Largest absolute eigenvalue of a Hermitian matrix."""
    return float(np.abs(np.linalg.eigvalsh(require_hermitian(a))).max())


def kron(a, b) -> np.ndarray:
    """Tensor product of two matrices or vectors."""
    return np.kron(np.asarray(a, dtype=complex), np.asarray(b, dtype=complex))
