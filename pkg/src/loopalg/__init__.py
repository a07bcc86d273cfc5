"""Loop homology of moment-angle complexes and related spaces from combinatorics."""

__version__ = "0.1.0"

from .bar import Verification, oracle_bb_table, tor_dims, verify
from .berglund import (
    BBTable,
    SaturatedSet,
    bad_primes,
    bb_polynomial,
    bb_table,
    berglund_term,
    delta_prime,
    flag_bb_table,
    intersection_components,
    is_saturated,
    reflect,
    saturated_subsets,
)
from .bounds import PrimeSet, anick_prime_set, bound_report, crude_bound, f_bound, simplicial_torsion_bound
from .complex import (
    SimplicialComplex,
    cycle,
    delete,
    disjoint_points,
    euler_char,
    flag_complex,
    full_subcomplex,
    is_flag,
    is_k_neighbourly,
    link,
    missing_faces,
    parse_complex,
    read_complex,
    simplex,
    simplex_boundary,
)
from .errors import CapExceeded, DomainWarning, InternalAssertion, InvalidInput, LoopAlgError, OracleMismatch
from .linalg import F2, F3, F5, QQ, FieldSpec, integral_homology, reduced_homology, smith_normal_form
from .poly import LaurentPoly
from .series import (
    SphereExponents,
    TruncatedSeries,
    extract_with_spheres,
    extract_zk_exponents,
    general_pp_inverse,
    inv_poincare_rk,
    inv_poincare_zk,
    poincare_dj,
    poincare_zk,
)
from .toric import Fan, is_smooth, orbifold_report, parse_fan, partial_quotient_report, pi1_invariants, stabiliser_primes

__all__ = [
    "anick_prime_set",
    "bad_primes",
    "bb_polynomial",
    "bb_table",
    "BBTable",
    "berglund_term",
    "bound_report",
    "CapExceeded",
    "crude_bound",
    "cycle",
    "delete",
    "delta_prime",
    "disjoint_points",
    "DomainWarning",
    "euler_char",
    "extract_with_spheres",
    "extract_zk_exponents",
    "F2",
    "F3",
    "F5",
    "f_bound",
    "Fan",
    "FieldSpec",
    "flag_bb_table",
    "flag_complex",
    "full_subcomplex",
    "general_pp_inverse",
    "integral_homology",
    "InternalAssertion",
    "intersection_components",
    "inv_poincare_rk",
    "inv_poincare_zk",
    "InvalidInput",
    "is_flag",
    "is_k_neighbourly",
    "is_saturated",
    "is_smooth",
    "LaurentPoly",
    "link",
    "LoopAlgError",
    "missing_faces",
    "oracle_bb_table",
    "OracleMismatch",
    "orbifold_report",
    "parse_complex",
    "parse_fan",
    "partial_quotient_report",
    "pi1_invariants",
    "poincare_dj",
    "poincare_zk",
    "PrimeSet",
    "QQ",
    "read_complex",
    "reduced_homology",
    "reflect",
    "saturated_subsets",
    "SaturatedSet",
    "simplex",
    "simplex_boundary",
    "simplicial_torsion_bound",
    "SimplicialComplex",
    "smith_normal_form",
    "SphereExponents",
    "stabiliser_primes",
    "tor_dims",
    "TruncatedSeries",
    "Verification",
    "verify",
]
