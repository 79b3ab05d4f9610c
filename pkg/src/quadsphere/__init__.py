"""Certifier and falsifier for spherical quasi-convexity of quadratic forms
on the nonnegative orthant patch of the unit sphere."""

__version__ = "0.1.0"

from .certify import (
    Certificate,
    Rule,
    Status,
    Verdict,
    Witness,
    WitnessKind,
    certify,
    construct_diag_witness,
    construct_threevec_witness,
    pair_violation_margin,
    verify_witness,
)
from .config import Config
from .cones import (
    ParetoEigenpair,
    ParetoSpectrum,
    PerronPair,
    check_kz_property,
    is_copositive,
    is_irreducible,
    is_z_matrix,
    pareto_spectrum,
    perron_pair,
)
from .genex import (
    make_diag_two_eig,
    make_householder,
    make_negative_positive,
    make_positive_basis,
    make_three_eigenvalue,
)
from .linalg import (
    ConvergenceError,
    EigenStructure,
    EigenSystem,
    SymMatrix,
    cluster_eigenvalues,
    eigen_decompose,
    is_diagonal,
    permute_similarity,
)
from .probe import (
    MinMethod,
    MinResult,
    ProbeReport,
    falsify,
    local_global_check,
    minimize_orthant,
)
from .sphere import (
    GeodesicSegment,
    SpherePoint,
    geodesic_eval,
    intrinsic_distance,
    sample_orthant_sphere,
    spherical_gradient_q,
)

__all__ = [name for name in dir() if not name.startswith("_")]
