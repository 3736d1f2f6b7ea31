"""Best diagonal approximants of Hermitian matrices.

Given a Hermitian A0, the library minimizes ``||A0 + Diag(x)||`` over
real diagonals x, certifies minimality of a candidate through the
moment-set intersection of the extreme eigenspaces, and solves rank-one
instances in closed form.
"""

from .certify import (
    INCONCLUSIVE,
    MINIMAL,
    NOT_MINIMAL,
    MinimalityCertificate,
    WitnessCheck,
    certify_minimality,
    embedding_index_groups,
    real_embedding_certificate,
    verify_certificate_b,
    verify_witness_cd,
)
from .hermitian_core import (
    EigenSystem,
    EigenspaceBasis,
    HermitianMatrix,
    as_real_diagonal,
    bottom_eigenspace,
    cluster_eigenspaces,
    complex_to_real_embed,
    eigendecompose,
    hermitian,
    shifted,
    spectral_norm,
    top_eigenspace,
)
from .moment_geometry import (
    DensityMatrix,
    MomentDistance,
    MomentVector,
    jnr_point,
    least_norm_hull_point,
    moment_element,
    moment_set_distance,
)
from .optimize import OptimizeParams, OptimizeResult, dispatch, minimize_sup_norm, multi_start
from .rank_one import (
    RankOneSolution,
    closed_polygon_angles,
    column_criterion_diagonal,
    generate_minimal_from_negative,
    minimizing_diagonal,
    nonunique_diagonals,
    orthogonal_partner,
    verify_column_criterion,
)
from .sdpa import export_sdpa, write_sdpa
from .subdifferential import (
    SubdiffDescriptor,
    directional_derivative,
    subdiff_lambda_max,
    subdiff_lambda_min,
    subdiff_norm,
)

__version__ = "0.1.0"
