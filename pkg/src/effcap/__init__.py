"""Effective capacity of L_p-norm diversity receivers over generalized fading.

Single-integral MGF/CHF evaluation of the effective capacity under the
ORA, OPRA, CIFR and TIFR adaptive transmission policies, with asymptotic
expansions and a Monte-Carlo oracle for cross-validation.
"""

from .errors import (
    DomainError,
    EffcapError,
    MethodUnavailableError,
    NumericError,
    ParameterError,
    UnsupportedModelError,
)

__version__ = "0.1.0"

__all__ = [
    "DomainError",
    "EffcapError",
    "MethodUnavailableError",
    "NumericError",
    "ParameterError",
    "UnsupportedModelError",
]
