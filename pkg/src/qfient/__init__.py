"""QFI, entanglement quantifiers, and certified precision bounds for qubit registers."""

__version__ = "0.1.0"

from .errors import (
    CapacityError,
    ConsistencyError,
    NotPsdError,
    QfientError,
    ValidationError,
)
from .linalg import (
    EigenSystem,
    default_dim_cap,
    eigendecompose,
    kron,
    matrix_sqrt_psd,
    operator_norm,
    projector,
    trace_norm,
)
from .states import (
    GHZ,
    KINDS,
    MAXIMALLY_MIXED,
    NON_MAX_ENTANGLED,
    PRODUCT_ZERO,
    PURE_KINDS,
    TAILORED_PURE,
    TAILORED_WERNER,
    WERNER_GHZ,
    BoundedValue,
    ScheduleSpec,
    StateFamilySpec,
    analytic_gme,
    analytic_qfi,
    build_state,
    build_state_vector,
    ghz_vector,
    local_hamiltonian,
    r_leb,
    schedule_instantiate,
)
from .qfi import (
    QfiResult,
    SldOperator,
    convex_roof_upper_bound,
    optimal_env_hamiltonian,
    qcrb,
    qfi_eigen,
    qfi_pure,
    qfi_purification,
    qfi_sld,
    sld,
)
from .geometry import DistanceReport, bures, distance_report, fidelity, trace_distance
from .entanglement import (
    GmeResult,
    WernerGmeCurvePoint,
    ek_prod_lower_bound,
    gme_pure,
    gme_werner,
    product_overlap,
    werner_genuine_threshold,
    werner_gme_gap_bound,
    werner_gme_objective,
    werner_mu_max,
)
from .bounds import (
    AUDIT_TOL_FACTOR,
    BoundCheck,
    ContinuityVariant,
    KprodCap,
    PairAuditReport,
    StateAuditReport,
    audit_pair,
    audit_state,
    continuity_bound,
    continuity_bound_local,
    continuity_bounds_all,
    gme_qfi_cap,
    is_pure_state,
    kprod_qfi_cap,
)
from .scaling import (
    ScalingFit,
    ScalingRecord,
    TargetVerification,
    default_n_grid,
    fit_exponent,
    sweep,
    verify_target,
)
