"""Ranked posets, flag vectors, cd-indices, and coefficient-sign analysis."""

from .analysis import (
    Certificate,
    NegativeWitness,
    WordClass,
    classify_word,
    count_part1_words,
    inequality_f_form,
    inequality_l_form,
    inequality_pairs,
    limit_cd_coefficient,
    limit_l_vector,
    negative_witness,
    nonneg_certificate,
)
from .constructions import (
    dp_poset,
    even_interval_systems,
    glue,
    horizontal_double,
    join,
    lemma2_poset,
    lemma3_poset,
    replicate_interval,
    validate_even_interval_system,
)
from .errors import (
    BudgetError,
    GlueInconsistentError,
    GlueMismatchError,
    NotCdExpressibleError,
)
from .exprs import ExpressionError, build_poset, parse_expression
from .flags import (
    AbPolynomial,
    CdPolynomial,
    FlagVector,
    LVector,
    cd_degree,
    cd_from_l,
    cd_index,
    cd_product,
    cd_support,
    cd_words,
    d_intervals,
    expand_cd_to_ab,
    flag_from_h,
    flag_h,
    flag_vector,
    l_vector,
)
from .poset import EulerianResult, IntervalViolation, RankedPoset, boolean, chain
from .subsets import (
    as_mask,
    evenly_contains,
    is_even_set,
    maximal_runs,
    parse_subset,
    ranks_from_mask,
    reverse_mask,
    subset_label,
)

__all__ = [
    "AbPolynomial",
    "BudgetError",
    "CdPolynomial",
    "Certificate",
    "EulerianResult",
    "ExpressionError",
    "FlagVector",
    "GlueInconsistentError",
    "GlueMismatchError",
    "IntervalViolation",
    "LVector",
    "NegativeWitness",
    "NotCdExpressibleError",
    "RankedPoset",
    "WordClass",
    "as_mask",
    "boolean",
    "build_poset",
    "cd_degree",
    "cd_from_l",
    "cd_index",
    "cd_product",
    "cd_support",
    "cd_words",
    "chain",
    "d_intervals",
    "classify_word",
    "count_part1_words",
    "dp_poset",
    "even_interval_systems",
    "evenly_contains",
    "expand_cd_to_ab",
    "flag_from_h",
    "flag_h",
    "flag_vector",
    "glue",
    "horizontal_double",
    "inequality_f_form",
    "inequality_l_form",
    "inequality_pairs",
    "is_even_set",
    "join",
    "l_vector",
    "lemma2_poset",
    "lemma3_poset",
    "limit_cd_coefficient",
    "limit_l_vector",
    "maximal_runs",
    "negative_witness",
    "nonneg_certificate",
    "parse_subset",
    "ranks_from_mask",
    "replicate_interval",
    "reverse_mask",
    "subset_label",
    "validate_even_interval_system",
]

__version__ = "0.1.0"
