"""Geometric entanglement: pure-state alternating optimization, GHZ-plus-noise closed forms,
and producibility bounds."""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import reduce

import numpy as np

from .errors import CapacityError, ConsistencyError, ValidationError
from .linalg import require_state_vector
from .sampling import rng_from_seed

DEFAULT_RESTARTS = 32
SWEEP_TOL = 1e-12
MAX_SWEEPS = 10_000
GME_QUBIT_CAP = 12

GRID_POINTS = 2048
BRACKET_TOL = 1e-12
MU_CLAMP = 1e-9
_INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0

# tail coefficient of the closed-form gap estimate, 4/3 + 2(2 + sqrt 7)/3
GAP_TAIL_COEFF = 4.0 / 3.0 + 2.0 * (2.0 + math.sqrt(7.0)) / 3.0


@dataclass(frozen=True)
class GmeResult:
    """Geometric entanglement of a pure state with the product state that realizes it."""

    value: float
    product_state: tuple[np.ndarray, ...]
    restarts_used: int
    converged: bool


@dataclass(frozen=True)
class WernerGmeCurvePoint:
    """One point of the GHZ-plus-white-noise entanglement curve."""

    n: int
    p: float
    mu_star: float
    value: float
    mu_m: float
    gap_bound: float | None


def product_overlap(psi: np.ndarray, sites) -> float:
    """|<product of sites | psi>| for single-qubit site vectors."""
    prod = reduce(np.kron, sites)
    return abs(np.vdot(prod, psi))


def _qubit_count(dim: int) -> int:
    n = dim.bit_length() - 1
    if 2**n != dim:
        raise ValidationError(f"state dimension {dim} is not a power of two")
    return n


def _contract_except(tensor: np.ndarray, sites, skip: int) -> np.ndarray:
    """Contract psi against the conjugated site vectors on every axis but ``skip``."""
    n = tensor.ndim
    w = tensor
    for m in range(n - 1, skip, -1):
        w = np.tensordot(w, sites[m].conj(), axes=(m, 0))
    for m in range(skip):
        w = np.tensordot(sites[m].conj(), w, axes=(0, 0))
    return w


def _alternating_sweeps(tensor, sites, tol, max_sweeps):
    """Alternating single-site updates; returns (overlap, sites, converged, per-sweep history)."""
    n = tensor.ndim
    history = []
    prev = -math.inf
    converged = False
    for _ in range(max_sweeps):
        overlap = 0.0
        for k in range(n):
            v = _contract_except(tensor, sites, k)
            nrm = float(np.linalg.norm(v))
            if nrm > 0.0:
                sites[k] = v / nrm
            overlap = nrm
        if overlap < prev - 1e-9:
            raise ConsistencyError("alternating overlap decreased; update rule is broken")
        history.append(overlap)
        if abs(overlap - prev) < tol:
            converged = True
            break
        prev = overlap
    return history[-1], sites, converged, history


def gme_pure(
    psi,
    restarts: int = DEFAULT_RESTARTS,
    seed: int = 0,
    *,
    tol: float = SWEEP_TOL,
    max_sweeps: int = MAX_SWEEPS,
) -> GmeResult:
    """Geometric entanglement 1 - max |<product|psi>|² over single-qubit product states.

    Each restart draws Haar-random site vectors and runs alternating single-site
    updates (each update sets one site to the normalized contraction of psi against
    the others, so the overlap never decreases). The best restart wins; ties keep
    the earliest restart.
    """
    psi = require_state_vector(psi)
    n = _qubit_count(psi.size)
    if n > GME_QUBIT_CAP:
        raise CapacityError(f"dense product-state search supports up to {GME_QUBIT_CAP} qubits, got {n}")
    if restarts < 1:
        raise ValidationError(f"restarts must be >= 1, got {restarts}")
    tensor = psi.reshape((2,) * n)
    rng = rng_from_seed(seed)
    best_overlap = -1.0
    best_sites: list[np.ndarray] | None = None
    best_converged = False
    for _ in range(restarts):
        sites = []
        for _ in range(n):
            z = rng.standard_normal(2) + 1j * rng.standard_normal(2)
            sites.append(z / np.linalg.norm(z))
        overlap, sites, converged, _ = _alternating_sweeps(tensor, sites, tol, max_sweeps)
        if overlap > best_overlap:
            best_overlap = overlap
            best_sites = sites
            best_converged = converged
    final = product_overlap(psi, best_sites)
    return GmeResult(
        value=1.0 - final**2,
        product_state=tuple(best_sites),
        restarts_used=restarts,
        converged=best_converged,
    )


def _check_mixture_args(n: int, p: float) -> None:
    if int(n) != n or n < 3:
        raise ValidationError(f"the GHZ-plus-noise curve is defined for integer N >= 3, got {n}")
    if not 0.0 <= p <= 1.0:
        raise ValidationError(f"mixing weight p must lie in [0, 1], got {p}")


def werner_gme_objective(n: int, p: float, mu):
    """Scalar objective whose maximum over mu in [0, mu_m] is the GHZ-plus-noise GME.

    Accepts a scalar or array mu; the domain is 0 <= mu < 1 (the mu/(mu-1) term is
    singular at 1).
    """
    _check_mixture_args(n, p)
    mu_arr = np.asarray(mu, dtype=float)
    if np.any(mu_arr < 0.0) or np.any(mu_arr >= 1.0):
        raise ValidationError("mu must lie in [0, 1)")
    gamma = (mu_arr - 1.0) ** 2 + 2.0 ** (3 - n) * mu_arr
    alpha = 1.0 - mu_arr + mu_arr**2
    value = 0.5 * (
        1.0
        - mu_arr
        - np.sqrt(gamma)
        + 2.0 * p * mu_arr
        + (1.0 - p) / 2.0**n * (2.0 * mu_arr + mu_arr * (mu_arr + np.sqrt(alpha)) / (mu_arr - 1.0))
    )
    return value if value.ndim else float(value)


def werner_mu_max(n: int) -> float:
    """Right endpoint 2^(N-3)/(2^(N-2) - 1) of the search interval; equals 1 at N = 3."""
    return 2.0 ** (n - 3) / (2.0 ** (n - 2) - 1.0)


def _golden_max(f, a: float, b: float, tol: float):
    """Golden-section maximization of a unimodal f on [a, b] to bracket width tol."""
    c = b - _INV_PHI * (b - a)
    d = a + _INV_PHI * (b - a)
    fc, fd = f(c), f(d)
    while b - a > tol:
        if fc > fd:
            b, d, fd = d, c, fc
            c = b - _INV_PHI * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + _INV_PHI * (b - a)
            fd = f(d)
    return (c, fc) if fc > fd else (d, fd)


def gme_werner(n: int, p: float) -> WernerGmeCurvePoint:
    """Geometric entanglement of p * GHZ + (1-p) * maximally mixed on N >= 3 qubits.

    Maximizes the closed-form objective on a 2048-point grid, then refines the best
    bracket by golden section to width 1e-12. The search interval is clamped just
    below 1 at N = 3, where the endpoint is singular.
    """
    _check_mixture_args(n, p)
    mu_m = werner_mu_max(n)
    hi = min(mu_m, 1.0 - MU_CLAMP)
    grid = np.linspace(0.0, hi, GRID_POINTS)
    values = werner_gme_objective(n, p, grid)
    i = int(np.argmax(values))
    lo_b = grid[max(i - 1, 0)]
    hi_b = grid[min(i + 1, GRID_POINTS - 1)]
    mu_star, value = _golden_max(lambda mu: werner_gme_objective(n, p, mu), lo_b, hi_b, BRACKET_TOL)
    if values[i] > value:
        mu_star, value = float(grid[i]), float(values[i])
    gap = werner_gme_gap_bound(n) if n >= 4 else None
    return WernerGmeCurvePoint(n=n, p=p, mu_star=float(mu_star), value=float(value), mu_m=mu_m, gap_bound=gap)


def werner_gme_gap_bound(n: int) -> float:
    """Upper bound on |(endpoint objective value) - p/2| for the GHZ-plus-noise curve, N >= 4."""
    if int(n) != n or n < 4:
        raise ValidationError(f"the gap estimate holds for integer N >= 4, got {n}")
    t = 1.0 / (2.0 ** (n - 2) - 1.0)
    return t + 0.5 * math.sqrt(t) + GAP_TAIL_COEFF / 2.0**n


def ek_prod_lower_bound(qfi: float, n: int, k: int) -> float:
    """Lower bound ((F_Q - kN)/(6N²))² on the k-block geometric entanglement, 0 when inactive."""
    if qfi < 0:
        raise ValidationError(f"QFI must be nonnegative, got {qfi}")
    if not 1 <= k <= n:
        raise ValidationError(f"block size k must satisfy 1 <= k <= N, got k={k}, N={n}")
    if qfi <= k * n:
        return 0.0
    return ((qfi - k * n) / (6.0 * n * n)) ** 2


def werner_genuine_threshold(n: int) -> float:
    """Mixing weight above which the GHZ-plus-noise state is genuinely entangled."""
    if int(n) != n or n < 2:
        raise ValidationError(f"threshold is defined for integer N >= 2, got {n}")
    return (2 ** (n - 1) - 1) / (2**n - 1)
