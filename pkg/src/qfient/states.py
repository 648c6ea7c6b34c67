"""Qubit-register state families, their local phase Hamiltonian, and closed-form quantifiers.

Families (all on N qubits, phase generated per site by sigma_z/2):

* ``ghz``                -- (|0...0> + |1...1>)/sqrt(2)
* ``non-max-entangled``  -- sqrt(p)|0...0> + sqrt(1-p)|1...1>
* ``tailored-pure``      -- the non-maximal superposition on an l-qubit block, |0> elsewhere
* ``werner-ghz``         -- p * GHZ projector + (1-p) * maximally mixed
* ``tailored-werner``    -- p * (l-block GHZ, |0> elsewhere) projector + (1-p) * maximally mixed
* ``product-zero``       -- |0...0>
* ``maximally-mixed``    -- identity / 2^N

The superposition weight of the pure families is symmetric under p <-> 1-p, so
weights above 1/2 are normalized to their mirror image.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ValidationError
from .linalg import check_capacity, projector

GHZ = "ghz"
NON_MAX_ENTANGLED = "non-max-entangled"
TAILORED_PURE = "tailored-pure"
WERNER_GHZ = "werner-ghz"
TAILORED_WERNER = "tailored-werner"
PRODUCT_ZERO = "product-zero"
MAXIMALLY_MIXED = "maximally-mixed"

KINDS = (
    GHZ,
    NON_MAX_ENTANGLED,
    TAILORED_PURE,
    WERNER_GHZ,
    TAILORED_WERNER,
    PRODUCT_ZERO,
    MAXIMALLY_MIXED,
)
PURE_KINDS = (GHZ, NON_MAX_ENTANGLED, TAILORED_PURE, PRODUCT_ZERO)

_NEEDS_P = (NON_MAX_ENTANGLED, TAILORED_PURE, WERNER_GHZ, TAILORED_WERNER)
_NEEDS_L = (TAILORED_PURE, TAILORED_WERNER)


@dataclass(frozen=True)
class StateFamilySpec:
    """Declarative description of one family member: kind plus weight p and block size l."""

    kind: str
    p: float | None = None
    l: int | None = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValidationError(f"unknown family kind {self.kind!r}; expected one of {KINDS}")
        if self.kind in _NEEDS_P:
            if self.p is None:
                raise ValidationError(f"family {self.kind!r} requires a weight p")
            if not 0.0 <= self.p <= 1.0:
                raise ValidationError(f"weight p must lie in [0, 1], got {self.p}")
        elif self.p is not None:
            raise ValidationError(f"family {self.kind!r} takes no weight p")
        if self.kind in _NEEDS_L:
            if self.l is None:
                raise ValidationError(f"family {self.kind!r} requires a block size l")
            if int(self.l) != self.l or self.l < 1:
                raise ValidationError(f"block size l must be a positive integer, got {self.l}")
        elif self.l is not None:
            raise ValidationError(f"family {self.kind!r} takes no block size l")

    @property
    def effective_p(self) -> float | None:
        """Superposition weight folded to [0, 1/2] for the pure families."""
        if self.kind in (NON_MAX_ENTANGLED, TAILORED_PURE):
            return min(self.p, 1.0 - self.p)
        return self.p


@dataclass(frozen=True)
class BoundedValue:
    """A quantifier value together with whether it is exact or only an upper bound."""

    value: float
    is_exact: bool


def _check_block(spec: StateFamilySpec, n: int) -> None:
    if spec.l is not None and spec.l > n:
        raise ValidationError(f"block size l={spec.l} exceeds register size N={n}")


def _check_n(n: int) -> int:
    if int(n) != n or n < 1:
        raise ValidationError(f"register size N must be a positive integer, got {n}")
    return int(n)


def _basis_zero(dim: int) -> np.ndarray:
    v = np.zeros(dim, dtype=complex)
    v[0] = 1.0
    return v


def ghz_vector(n: int) -> np.ndarray:
    v = np.zeros(2**n, dtype=complex)
    v[0] = v[-1] = 1 / math.sqrt(2)
    return v


def _superposition_vector(n: int, p: float) -> np.ndarray:
    v = np.zeros(2**n, dtype=complex)
    v[0] = math.sqrt(p)
    v[-1] = math.sqrt(1.0 - p)
    return v


def build_state_vector(spec: StateFamilySpec, n: int, *, dim_cap: int | None = None) -> np.ndarray:
    """Dense amplitude vector for a pure-family member."""
    n = _check_n(n)
    _check_block(spec, n)
    check_capacity(2**n, dim_cap)
    if spec.kind == GHZ:
        return ghz_vector(n)
    if spec.kind == NON_MAX_ENTANGLED:
        return _superposition_vector(n, spec.effective_p)
    if spec.kind == TAILORED_PURE:
        block = _superposition_vector(spec.l, spec.effective_p)
        if spec.l == n:
            return block
        return np.kron(block, _basis_zero(2 ** (n - spec.l)))
    if spec.kind == PRODUCT_ZERO:
        return _basis_zero(2**n)
    raise ValidationError(f"family {spec.kind!r} is not pure")


def build_state(spec: StateFamilySpec, n: int, *, dim_cap: int | None = None) -> np.ndarray:
    """Dense density matrix for any family member."""
    n = _check_n(n)
    _check_block(spec, n)
    check_capacity(2**n, dim_cap)
    d = 2**n
    if spec.kind in PURE_KINDS:
        return projector(build_state_vector(spec, n, dim_cap=dim_cap))
    if spec.kind == MAXIMALLY_MIXED:
        return np.eye(d, dtype=complex) / d
    if spec.kind == WERNER_GHZ:
        pure = projector(ghz_vector(n))
    elif spec.kind == TAILORED_WERNER:
        block = ghz_vector(spec.l)
        vec = block if spec.l == n else np.kron(block, _basis_zero(2 ** (n - spec.l)))
        pure = projector(vec)
    else:  # pragma: no cover - KINDS is exhaustive
        raise ValidationError(f"unhandled family kind {spec.kind!r}")
    return spec.p * pure + (1.0 - spec.p) * np.eye(d, dtype=complex) / d


def local_hamiltonian(n: int, *, dim_cap: int | None = None) -> np.ndarray:
    """Sum of per-site sigma_z/2 generators; diagonal entry for bitstring b is (N - 2 popcount(b))/2."""
    n = _check_n(n)
    check_capacity(2**n, dim_cap)
    d = 2**n
    bits = ((np.arange(d)[:, None] >> np.arange(n)[None, :]) & 1).sum(axis=1)
    return np.diag((n - 2 * bits) / 2.0).astype(complex)


def _ghz_mixture_qfi(n: int, p: float, l: int) -> float:
    # Exact value for p * (l-block GHZ projector) + (1-p) * identity/2^N under the
    # local sigma_z/2 Hamiltonian, validated against the dense eigendecomposition
    # route; the 2^(1-N) term underflows harmlessly to 0 for very large N.
    if p == 0.0:
        return 0.0
    return float(l) ** 2 * p**2 / (p + (1.0 - p) * 2.0 ** (1 - n))


def analytic_qfi(spec: StateFamilySpec, n: int) -> float:
    """Closed-form QFI of a family member under the local sigma_z/2 Hamiltonian."""
    n = _check_n(n)
    _check_block(spec, n)
    if spec.kind == GHZ:
        return float(n) ** 2
    if spec.kind == NON_MAX_ENTANGLED:
        pe = spec.effective_p
        return 4.0 * pe * (1.0 - pe) * float(n) ** 2
    if spec.kind == TAILORED_PURE:
        pe = spec.effective_p
        return 4.0 * pe * (1.0 - pe) * float(spec.l) ** 2
    if spec.kind == WERNER_GHZ:
        return _ghz_mixture_qfi(n, spec.p, n)
    if spec.kind == TAILORED_WERNER:
        return _ghz_mixture_qfi(n, spec.p, spec.l)
    return 0.0  # product-zero, maximally-mixed


def analytic_gme(spec: StateFamilySpec, n: int) -> BoundedValue:
    """Geometric entanglement of a family member: exact value or flagged upper bound."""
    n = _check_n(n)
    _check_block(spec, n)
    if spec.kind == GHZ:
        return BoundedValue(0.5, True)
    if spec.kind in (NON_MAX_ENTANGLED, TAILORED_PURE):
        return BoundedValue(spec.effective_p, True)
    if spec.kind in (WERNER_GHZ, TAILORED_WERNER):
        return BoundedValue(spec.p / 2.0, False)
    return BoundedValue(0.0, True)


def r_leb(spec: StateFamilySpec, n: int) -> BoundedValue:
    """Relative size of the largest entangled block; 1/N marks fully separable members."""
    n = _check_n(n)
    _check_block(spec, n)
    separable = BoundedValue(1.0 / n, True)
    if spec.kind in (PRODUCT_ZERO, MAXIMALLY_MIXED):
        return separable
    if spec.kind == GHZ:
        return BoundedValue(1.0, True)
    if spec.kind == NON_MAX_ENTANGLED:
        return BoundedValue(1.0, True) if spec.effective_p > 0 else separable
    if spec.kind == TAILORED_PURE:
        return BoundedValue(spec.l / n, True) if spec.effective_p > 0 else separable
    if spec.kind == WERNER_GHZ:
        return BoundedValue(1.0, False) if spec.p > 0 else separable
    return BoundedValue(spec.l / n, False) if spec.p > 0 else separable


@dataclass(frozen=True)
class ScheduleSpec:
    """Power-law decay schedule p(N) = N^-eps1, l(N) = ceil(N^(1-eps2)), clamped to [1, N]."""

    eps1: float
    eps2: float

    def __post_init__(self):
        if self.eps1 <= 0 or self.eps2 <= 0:
            raise ValidationError(f"decay exponents must be positive, got {self.eps1}, {self.eps2}")
        if self.eps1 + 2 * self.eps2 >= 2:
            raise ValidationError(
                f"eps1 + 2*eps2 = {self.eps1 + 2 * self.eps2} leaves no super-classical scaling"
            )


def schedule_instantiate(schedule: ScheduleSpec, n: int, kind: str = TAILORED_PURE) -> StateFamilySpec:
    """Concrete family member for register size N under a decay schedule."""
    n = _check_n(n)
    if n < 2:
        raise ValidationError(f"schedules require N >= 2, got {n}")
    p = float(n) ** -schedule.eps1
    l = min(n, max(1, math.ceil(n ** (1.0 - schedule.eps2))))
    if kind in (GHZ, PRODUCT_ZERO, MAXIMALLY_MIXED):
        return StateFamilySpec(kind)
    if kind in (NON_MAX_ENTANGLED, WERNER_GHZ):
        return StateFamilySpec(kind, p=p)
    if kind in (TAILORED_PURE, TAILORED_WERNER):
        return StateFamilySpec(kind, p=p, l=l)
    raise ValidationError(f"unknown family kind {kind!r}")
