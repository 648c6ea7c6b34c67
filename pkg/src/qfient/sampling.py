"""Seeded random states and unitaries for sampled bounds and property sweeps."""

from __future__ import annotations

import numpy as np

from .linalg import hermitian_part


def rng_from_seed(seed: int | None) -> np.random.Generator:
    return np.random.default_rng(seed)


def haar_state(dim: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-random pure state via a normalized complex Gaussian vector."""
    z = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
    return z / np.linalg.norm(z)


def haar_unitary(dim: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-random unitary via QR of a Ginibre matrix with phase correction."""
    z = (rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))) / np.sqrt(2)
    q, r = np.linalg.qr(z)
    d = np.diagonal(r)
    return q * (d / np.abs(d))


def ginibre_density(dim: int, rng: np.random.Generator, rank: int | None = None) -> np.ndarray:
    """Hilbert-Schmidt-random density matrix G G† / Tr(G G†) with G Ginibre of width ``rank``."""
    k = dim if rank is None else rank
    g = rng.standard_normal((dim, k)) + 1j * rng.standard_normal((dim, k))
    m = g @ g.conj().T
    return hermitian_part(m / np.trace(m).real)


def random_hermitian(dim: int, rng: np.random.Generator) -> np.ndarray:
    """Gaussian random Hermitian matrix with O(1) entries."""
    g = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    return hermitian_part(g)
