"""Weighted polynomial norms under generalized Jacobi weights, with a
numerical verification harness for the associated norm inequalities."""

from .constants import (
    LengthRatios,
    bari_constant,
    bari_constant_limit,
    constant_limits,
    length_ratios,
    nikolskii_constant,
    nikolskii_constant_limit,
)
from .harness import (
    BARI_LEMMA,
    NIKOLSKII_THEOREM,
    ConstantsReport,
    InequalityRecord,
    SharpnessFit,
    derive_seed,
    extremal_ratio_search,
    run_bari_suite,
    run_nikolskii_suite,
    sharpness_fit,
    sharpness_series,
    suite_accuracy,
    verify_bari,
    verify_constant_properties,
    verify_nikolskii,
)
from .polynomials import (
    AlgebraicPoly,
    TrigPoly,
    compose_with_cosine,
    load_poly,
    lp_norm,
    poly_from_dict,
    poly_to_dict,
    random_poly,
    save_poly,
    trig_derivative,
    uniform_norm,
)
from .quadrature import (
    Accuracy,
    IntegralResult,
    QuadratureConvergenceError,
    QuadratureError,
    QuadratureRule,
    gauss_jacobi_rule,
    integrate_weighted_algebraic,
    integrate_weighted_trig,
    oracle_integrate,
)
from .segments import (
    ALL_STATEMENTS,
    AdmissibilityError,
    LemmaReport,
    Segment,
    SweepResult,
    check_segment_lemma,
    check_segment_lower_bound,
    check_trig_segment_bound,
    sweep_segments,
)
from .weights import (
    NikolskiiParams,
    TrigWeightParams,
    WeightParams,
    regularized_incomplete_beta,
    segment_weight_integral,
    trig_weight_eval,
    weight_eval,
)

__version__ = "0.1.0"
