"""Exact polyhedral cones of linear entropic formulas that are monotone
under local operations."""

from .catalog import (
    CATALOG,
    conditional_entropy,
    conditional_mutual_information,
    dual_total_correlation3,
    mutual_information,
    u_monotone4,
    zhang_yeung4,
)
from .cone import (
    HRep,
    NonNegCombination,
    Separation,
    VRep,
    contains,
    dd_convert,
    dual_convert,
    intersect,
    is_extremal,
    solve_nonneg_combination,
    verify_dd_pair,
)
from .errors import CertificateError, DimensionMismatch, NotAMonotone, ResourceLimitExceeded
from .functional import Functional, SystemSet
from .lattice import (
    LowerSetFamily,
    enumerate_lower_sets,
    is_lower_set,
    permute_functional,
    subsets_containing,
)
from .monotonicity import (
    DecompositionCertificate,
    SymmetricVector,
    balance_defect,
    check_monotone,
    decompose_monotone,
    embed_symmetric,
    enumerate_monotone_rays,
    generator_set,
    lift_partial_trace,
    monotonicity_cone,
    single_system_facets,
    symmetric_facets,
    symmetric_generators,
)
from .witness import (
    EntropyVector,
    JointDistribution,
    ViolationCertificate,
    balance_witness,
    evaluate,
    facet_witness_distribution,
    shannon_entropy_vector,
    violation_certificate,
)

__version__ = "0.1.0"
