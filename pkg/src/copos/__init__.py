"""Spectrahedral approximations of the copositive cone and its dual.

The outer side tests copositivity through eigenvalues of exactly assembled
localizing matrices (levels shrink onto the copositive cone); the inner side
builds members of the completely positive cone from second moments of
sum-of-squares densities, with certificate-producing membership tests.
"""

from .indexing import IndexBasis, MultiIndex, basis_size, enumerate_basis
from .inner import (
    DualResult,
    dual_membership,
    generator_from_poly,
    generator_from_psd,
    pairing,
    pairing_matrices,
)
from .measures import (
    MomentDegreeError,
    MomentFileError,
    MomentSequence,
    affine_simplex_moments,
    exponential_moment,
    load_moments,
    save_moments,
    simplex_moment,
)
from .momentmatrix import (
    Polynomial,
    SymMatrixQ,
    localizing_matrix,
    moment_matrix,
    quadratic_form,
    shifted_sequence,
)
from .oracles import OracleVerdict, det_c1, exact_2x2, grid_copositivity
from .outer import (
    DECISION_BAND,
    HierarchyInconsistencyError,
    HierarchyResult,
    MembershipVerdict,
    ScanPoint,
    hierarchy_scan,
    membership,
    simplicial_cone_membership,
    slice_scan_2x2,
    write_scan_csv,
)
from .spectra import (
    EigenConvergenceError,
    SpectralResult,
    SymMatrixF,
    min_eigenvalue,
    psd_projection,
    to_float,
)

__version__ = "0.1.0"

__all__ = [
    "DECISION_BAND",
    "DualResult",
    "EigenConvergenceError",
    "HierarchyInconsistencyError",
    "HierarchyResult",
    "IndexBasis",
    "MembershipVerdict",
    "MomentDegreeError",
    "MomentFileError",
    "MomentSequence",
    "MultiIndex",
    "OracleVerdict",
    "Polynomial",
    "ScanPoint",
    "SpectralResult",
    "SymMatrixF",
    "SymMatrixQ",
    "affine_simplex_moments",
    "basis_size",
    "det_c1",
    "dual_membership",
    "enumerate_basis",
    "exact_2x2",
    "exponential_moment",
    "generator_from_poly",
    "generator_from_psd",
    "grid_copositivity",
    "hierarchy_scan",
    "load_moments",
    "localizing_matrix",
    "membership",
    "min_eigenvalue",
    "moment_matrix",
    "pairing",
    "pairing_matrices",
    "psd_projection",
    "quadratic_form",
    "save_moments",
    "shifted_sequence",
    "simplex_moment",
    "simplicial_cone_membership",
    "slice_scan_2x2",
    "to_float",
    "write_scan_csv",
]
