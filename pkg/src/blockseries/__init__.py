"""Series over block-counting functions of base-B digit expansions.

Closed forms are exact ``SymbolicConstant`` objects; every one of them can
be checked against a brute-force partial sum with a rigorous tail bound.
"""

from .closedform import (
    block_series_base,
    block_series_deg2,
    block_series_deg3,
    block_series_nn1,
    block_series_qk,
    closed_form,
    delta_pm,
    gamma_pm,
)
from .digits import Word, count_block, count_block_array, digit_sum, expand
from .series import (
    NN1,
    QK,
    Deg2,
    Deg3,
    PartialSumResult,
    QBase,
    a_expansion_check,
    a_term,
    ak_term,
    partial_sum,
    q_base,
    tail_bound,
)
from .special import digamma, gauss_digamma, log_gamma
from .symbolic import SymbolicConstant, a_tail_symbolic
from .transform import (
    BlockCountRule,
    ForwardRule,
    PeriodicRule,
    RationalSequence,
    forward,
    inverse,
    periodic_r_for_word,
    periodic_series_constant,
    weighted_sum_lhs,
    weighted_sum_rhs,
)

__version__ = "0.1.0"

__all__ = [
    "BlockCountRule",
    "Deg2",
    "Deg3",
    "ForwardRule",
    "NN1",
    "PartialSumResult",
    "PeriodicRule",
    "QBase",
    "QK",
    "RationalSequence",
    "SymbolicConstant",
    "Word",
    "a_expansion_check",
    "a_tail_symbolic",
    "a_term",
    "ak_term",
    "block_series_base",
    "block_series_deg2",
    "block_series_deg3",
    "block_series_nn1",
    "block_series_qk",
    "closed_form",
    "count_block",
    "count_block_array",
    "delta_pm",
    "digamma",
    "digit_sum",
    "expand",
    "forward",
    "gamma_pm",
    "gauss_digamma",
    "inverse",
    "log_gamma",
    "partial_sum",
    "periodic_r_for_word",
    "periodic_series_constant",
    "q_base",
    "tail_bound",
    "weighted_sum_lhs",
    "weighted_sum_rhs",
]
