"""Tortoise/hare stack-sorting on words and tortoise complexity of infinite words."""

from .word_ops import (
    BlockDecomposition,
    IterationCapError,
    canonical_key,
    decompose_by_max,
    format_word,
    hare,
    iterate_tortoise,
    nearly_abelian_key,
    parse_word,
    sort,
    tortoise,
    tortoise_sort_index,
)
from .sequences import (
    Dfao,
    InfiniteWord,
    dfao_eval,
    load_dfao,
    paperfolding,
    paperfolding_at,
    prefix,
    thue_morse,
    thue_morse_at,
)
from .factor_enum import (
    DEFAULT_POLICY,
    FactorSet,
    ResourceCapError,
    StabilizationPolicy,
    factors,
    parikh,
    special_factors,
    stable_factors,
)
from .complexity import abel_stat, class_report, pf_threshold, rho, rho_ab, rho_nearly_ab, rho_tortoise

__version__ = "0.1.0"
