"""Exact counts, moments and bound verification for rational exponential sums."""

from ._ratsum import (
    Error,
    FieldContext,
    MomentRecord,
    additive_character,
    count_integer_solutions,
    count_mod_solutions,
    count_window_solutions,
    decompose_mod_count,
    determine_k,
    envelope_value,
    exp_sum,
    exp_sum_weighted,
    is_prime,
    maximal_operator,
    moment_full,
    moment_restricted_box,
    moment_restricted_moment_curve,
    moment_weighted_box,
    power_sum_vector,
    shifted_exp_sum,
    validate_context,
    weil_margin,
)

__all__ = [
    "Error",
    "FieldContext",
    "MomentRecord",
    "additive_character",
    "count_integer_solutions",
    "count_mod_solutions",
    "count_window_solutions",
    "decompose_mod_count",
    "determine_k",
    "envelope_value",
    "exp_sum",
    "exp_sum_weighted",
    "is_prime",
    "maximal_operator",
    "moment_full",
    "moment_restricted_box",
    "moment_restricted_moment_curve",
    "moment_weighted_box",
    "power_sum_vector",
    "shifted_exp_sum",
    "validate_context",
    "weil_margin",
]
