"""Class numbers, traces of singular moduli and modular polynomials for the
Hauptmoduln of the genus-zero groups Gamma_0(N), N in {2, 3, 4, 5, 7, 13}."""

from .cusps import CuspRep, cusp_equivalent, cusp_set, cusp_width, nu, selfmap_cusp_predicate
from .exceptions import (
    NonIntegralCoefficient,
    NonrealTrace,
    NonvanishingRemainder,
    PoleError,
    PrecisionError,
    RoundingUncertified,
    TruncationError,
    UnsupportedLevel,
)
from .forms import (
    CMPoint,
    Mat2,
    QuadForm,
    act,
    class_number_H,
    enumerate_classes,
    enumerate_reduced,
    enumerate_reduced_via_cosets,
    form_invariants,
    is_reduced,
    omega,
    reduce,
)
from .funddomain import build_domain, elliptic_points, export_domain, gamma_k, in_fundamental_region
from .hauptmodul import j_at_cusp, j_at_cusp_numeric, j_eval, j_eval_cm
from .levels import SUPPORTED_LEVELS
from .modpoly import (
    ModularPolynomial,
    build_modular_polynomial,
    conjugate_power_sums,
    coset_representatives,
    diagonal,
    diagonal_quotient,
)
from .numtheory import divisor_stats, euler_phi, sp_inverse, square_root_if_perfect
from .qseries import (
    HauptmodulSeries,
    PuiseuxSeries,
    euler_product_series,
    hauptmodul_series,
    series_combine,
    series_eval_complex,
)
from .verify import (
    VerificationReport,
    class_factor_data,
    run_suite,
    trace_t,
    verify_class_number_relation,
    verify_factorization,
    verify_trace_relation,
)

__version__ = "0.1.0"
