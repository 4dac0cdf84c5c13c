"""Words with prescribed fractional powers.

Exponents and densities are returned as ``fractions.Fraction``. Words may be
given as strings over '0'-'9', 'a'-'z', as lists of symbol ids, or as
:class:`Word` objects.
"""

from ._core import (
    PreconditionError,
    ResampleExhausted,
    Word,
    approximate_power_defect,
    binary_entropy,
    brute_force_critical_exponent,
    check_period_difference,
    critical_exponent,
    decode_approx_power,
    decode_power,
    defect_to_periodic,
    encode_approx_power,
    encode_power,
    enumerate_exponents,
    free_bit_count,
    layout_intervals,
    lz_phrase_count,
    maximal_repetitions,
    min_free_density,
    smallest_period,
    synthesize,
    threshold_holds,
    threshold_n,
    verify,
)

__version__ = "0.1.0"

__all__ = [
    "PreconditionError",
    "ResampleExhausted",
    "Word",
    "approximate_power_defect",
    "binary_entropy",
    "brute_force_critical_exponent",
    "check_period_difference",
    "critical_exponent",
    "decode_approx_power",
    "decode_power",
    "defect_to_periodic",
    "encode_approx_power",
    "encode_power",
    "enumerate_exponents",
    "free_bit_count",
    "layout_intervals",
    "lz_phrase_count",
    "maximal_repetitions",
    "min_free_density",
    "smallest_period",
    "synthesize",
    "threshold_holds",
    "threshold_n",
    "verify",
]
