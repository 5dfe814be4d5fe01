"""Symmetry reductions for polynomial nonnegativity and feasibility.

Symmetric problems in n variables collapse onto test sets of points with few
distinct coordinate values.  This package computes the power-sum form of a
symmetric polynomial, reads off its sparsity, builds the matching reduction
plan (degree principle, half-degree principle, or sparse variants), and runs
seeded numeric searches over the reduced problems, with brute-force oracles
for validation at small scale.
"""

__version__ = "0.1.0"

from .descartes import (
    distinct_real_root_bound_fewnomial,
    negative_root_bound,
    positive_root_bound,
    sign_variations,
)
from .parsing import InputSystem, ParseError, parse_expression, parse_system_text
from .polynomial import (
    MINUS_INFINITY,
    Poly,
    compose,
    elem_sym,
    extend_vars,
    gradient,
    permute_vars,
    power_sum,
)
from .powersums import (
    CorollarySplit,
    NotSymmetricError,
    PowerSumRep,
    corollary_split,
    from_power_sums,
    is_symmetric,
    newton_e_to_p,
    symmetry_witness,
    to_power_sums,
    weighted_degree,
)
from .reduction import (
    Partition,
    PointProfile,
    ReducedInstance,
    ReductionPlan,
    Relation,
    orthant_cells,
    partitions,
    plan_degree_principle,
    plan_half_degree,
    plan_jsparse,
    point_profile,
    substitute,
)
from .search import (
    SearchConfig,
    SearchReport,
    check_feasible,
    minimize_reduced,
    oracle_feasible,
    oracle_min,
    provable_bounds,
    verify_witness,
)
from .sparsity import (
    GradientProbe,
    SparsitySupport,
    gradient_support_probe,
    gradient_support_test,
    support,
    vandermonde_inverse_at,
    vandermonde_matrix_at,
)

__all__ = [
    "MINUS_INFINITY",
    "CorollarySplit",
    "GradientProbe",
    "InputSystem",
    "NotSymmetricError",
    "ParseError",
    "Partition",
    "PointProfile",
    "Poly",
    "PowerSumRep",
    "ReducedInstance",
    "ReductionPlan",
    "Relation",
    "SearchConfig",
    "SearchReport",
    "SparsitySupport",
    "check_feasible",
    "compose",
    "corollary_split",
    "distinct_real_root_bound_fewnomial",
    "elem_sym",
    "extend_vars",
    "from_power_sums",
    "gradient",
    "gradient_support_probe",
    "gradient_support_test",
    "is_symmetric",
    "minimize_reduced",
    "negative_root_bound",
    "newton_e_to_p",
    "oracle_feasible",
    "oracle_min",
    "orthant_cells",
    "parse_expression",
    "parse_system_text",
    "partitions",
    "permute_vars",
    "plan_degree_principle",
    "plan_half_degree",
    "plan_jsparse",
    "point_profile",
    "positive_root_bound",
    "power_sum",
    "provable_bounds",
    "sign_variations",
    "substitute",
    "support",
    "symmetry_witness",
    "to_power_sums",
    "vandermonde_inverse_at",
    "vandermonde_matrix_at",
    "verify_witness",
    "weighted_degree",
]
