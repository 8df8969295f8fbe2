"""Extended Bell and Stirling numbers from hypergeometric exponentiation."""

from .exact_arith import binomial, factorial, pochhammer
from .powerseries import (
    FormalSeries,
    HypergeomSpec,
    IntegralityViolation,
    extract_weighted,
    hypergeom_exp_sequence,
    hypergeom_series,
    oracle_restricted,
    oracle_restricted_stirling,
    oracle_stirling,
    series_exp,
    series_log,
    series_mul,
)
from .sequences import (
    bell_closed_small,
    classical_stirling_sum,
    euler_operator_stirling,
    extended_bell,
    extended_bell_alt,
    hg_polynomial,
    restricted_bell,
    stirling_ext,
    supra_diagonal,
)

__version__ = "0.1.0"
