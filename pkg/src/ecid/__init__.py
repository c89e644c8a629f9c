"""Exact group-algebra toolkit: finite fields, q-orbits, ECD/ECID classification
and idempotent-generated group codes."""

from .algebra import (
    AlgebraElement,
    alg_mul,
    complement,
    dimension_formula_D,
    hat_idempotent,
    ideal_dimension,
    is_idempotent,
    lambda1,
    right_mul_matrix,
    weighted_lambda1,
)
from .classify import (
    ClassificationReport,
    WedderburnData,
    b0,
    classify,
    classify_abelian_semisimple,
    classify_modular_exhaustive,
    classify_nonabelian_semisimple,
    classify_semisimple_arithmetic,
    max_minimal_ideal_dim,
    modular_necessary_condition,
    wedderburn_solver,
)
from .codes import (
    BudgetExceeded,
    CodeReport,
    abelian_bounds,
    analyze_code,
    dimension_congruence_set,
    ecid_dimension_sum,
    idempotent_search,
    min_distance_exact,
    nonprimitivity_test_abelian,
    nonprimitivity_test_modular,
    nonprimitivity_test_semisimple,
)
from .cyclotomic import QOrbitData, is_splitting_field, qorbits, splitting_necessary_condition
from .field import FieldElement, FiniteField, field_make, matrix_rank, multiplicative_order
from .groups import (
    Group,
    commutator_subgroup,
    conjugacy_class_count,
    exponent,
    group_abelian,
    group_from_cayley,
    group_from_permutations,
    sylow_is_cp,
)

__all__ = [
    "AlgebraElement",
    "alg_mul",
    "complement",
    "dimension_formula_D",
    "hat_idempotent",
    "ideal_dimension",
    "is_idempotent",
    "lambda1",
    "right_mul_matrix",
    "weighted_lambda1",
    "ClassificationReport",
    "WedderburnData",
    "b0",
    "classify",
    "classify_abelian_semisimple",
    "classify_modular_exhaustive",
    "classify_nonabelian_semisimple",
    "classify_semisimple_arithmetic",
    "max_minimal_ideal_dim",
    "modular_necessary_condition",
    "wedderburn_solver",
    "BudgetExceeded",
    "CodeReport",
    "abelian_bounds",
    "analyze_code",
    "dimension_congruence_set",
    "ecid_dimension_sum",
    "idempotent_search",
    "min_distance_exact",
    "nonprimitivity_test_abelian",
    "nonprimitivity_test_modular",
    "nonprimitivity_test_semisimple",
    "QOrbitData",
    "is_splitting_field",
    "qorbits",
    "splitting_necessary_condition",
    "FieldElement",
    "FiniteField",
    "field_make",
    "matrix_rank",
    "multiplicative_order",
    "Group",
    "commutator_subgroup",
    "conjugacy_class_count",
    "exponent",
    "group_abelian",
    "group_from_cayley",
    "group_from_permutations",
    "sylow_is_cp",
]

__version__ = "0.1.0"
