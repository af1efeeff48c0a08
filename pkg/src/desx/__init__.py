"""Minimum-volume ellipsoids of norm unit balls and the directional
extent experiments built on them: subspace scans, direct-sum
asymptotics, duality-map defects and perturbation diagnostics.
"""

from .errors import (
    DesxError,
    DegenerateInputError,
    DegenerateNormError,
    DegenerateSubspaceError,
    DimensionMismatchError,
    InvalidInputError,
    InvalidParameterError,
    LargeResidualError,
    NonConvergenceError,
    NonSmoothNormError,
)
from .spaces import (
    Capabilities,
    Direction,
    NormOracle,
    Subspace,
    SupportResult,
    apply_linear,
    dual_eval,
    extreme_points,
    make_custom,
    make_direct_sum,
    make_direction,
    make_facet,
    make_lp,
    make_polytope,
    make_quadratic,
    restrict,
    sample_unit_sphere,
    support_point,
)
from .mvee import (
    BodyResult,
    DesignState,
    Ellipsoid,
    ReducedSumResult,
    SolverConfig,
    ViolationResult,
    ellipsoid_from_text,
    ellipsoid_to_text,
    mvee_body,
    mvee_direct_sum_reduced,
    mvee_points,
    semi_axes,
    semi_axes_csv,
    violation_search,
    volume_ratio,
)
from .des import (
    AlphaReport,
    ChainReport,
    DesScanReport,
    EtaReport,
    LatticeSpec,
    PerturbationReport,
    SumAsymptoticsRow,
    UltralimitReport,
    alpha_p,
    chain_inner_product,
    des_scan,
    directional_extent,
    eta_subspace,
    gauge,
    lp_sum_asymptotics,
    perturbation_volume_bounds,
    ultralimit_convergence,
)
from .duality import (
    AuerbachBasis,
    DefectReport,
    SampleSpec,
    SandwichReport,
    auerbach_basis,
    auerbach_from_vectors,
    duality_map,
    form_B,
    form_g,
    near_convexity_defect,
    sandwich_check,
)

__version__ = "0.1.0"
