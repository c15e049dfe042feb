"""Exact arithmetic in the derivation algebras of truncated polynomial
rings over prime fields: tori, completely solvable subalgebras, graded
dimensions, and the automorphism action.
"""

__version__ = "0.1.0"

from .autos import (
    PolyAutomorphism,
    apply_to_poly,
    compose,
    decompose,
    induced,
    induced_by_conjugation,
    invert,
    random_automorphism,
    substitution_matrix,
    verify_grading_shift,
)
from .borel import (
    IndexTriple,
    build_B1_example,
    build_b0,
    build_bn,
    build_bq,
    build_bq_decomposed,
    build_br,
    build_cq,
    enumerate_gamma,
    enumerate_lambda,
    standard_torus,
)
from .gdim import (
    LaurentPoly,
    NotGradedError,
    Q_poly,
    dim_formula_br,
    filtration_dims,
    gdim_Ri_formula,
    gdim_filtered,
    gdim_formula_br,
    gdim_formula_homogeneous_borel,
    gdim_graded,
    geometric_q_sum,
)
from .params import Params, TorusCoords
from .series import (
    MaximalityReport,
    NotASubalgebraError,
    NotATorusError,
    ProbeResult,
    SeriesReport,
    derived_series,
    is_completely_solvable,
    is_nilpotent,
    is_solvable,
    is_torus,
    lower_central_series,
    maximality_probe,
    r_invariant_pr0,
    torus_orbit_invariant,
)
from .subspace import (
    Subspace,
    bracket_space,
    contains,
    restricted_closure,
    span,
    subalgebra_closure,
)
from .trunc import TruncPoly, poly_mul
from .witt import (
    WittElement,
    apply_derivation,
    bracket,
    monomial_basis,
    natural_rep_matrix,
    p_power,
    standard_components,
    tr_components,
)

__all__ = [
    "IndexTriple",
    "LaurentPoly",
    "MaximalityReport",
    "NotASubalgebraError",
    "NotATorusError",
    "NotGradedError",
    "Params",
    "PolyAutomorphism",
    "ProbeResult",
    "Q_poly",
    "SeriesReport",
    "Subspace",
    "TorusCoords",
    "TruncPoly",
    "WittElement",
    "apply_derivation",
    "apply_to_poly",
    "bracket",
    "bracket_space",
    "build_B1_example",
    "build_b0",
    "build_bn",
    "build_bq",
    "build_bq_decomposed",
    "build_br",
    "build_cq",
    "compose",
    "contains",
    "decompose",
    "derived_series",
    "dim_formula_br",
    "enumerate_gamma",
    "enumerate_lambda",
    "filtration_dims",
    "gdim_Ri_formula",
    "gdim_filtered",
    "gdim_formula_br",
    "gdim_formula_homogeneous_borel",
    "gdim_graded",
    "geometric_q_sum",
    "induced",
    "induced_by_conjugation",
    "invert",
    "is_completely_solvable",
    "is_nilpotent",
    "is_solvable",
    "is_torus",
    "lower_central_series",
    "maximality_probe",
    "monomial_basis",
    "natural_rep_matrix",
    "p_power",
    "poly_mul",
    "r_invariant_pr0",
    "random_automorphism",
    "restricted_closure",
    "span",
    "standard_components",
    "standard_torus",
    "subalgebra_closure",
    "substitution_matrix",
    "torus_orbit_invariant",
    "tr_components",
    "verify_grading_shift",
]
