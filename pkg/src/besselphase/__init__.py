"""Bessel functions of large order in the Fresnel regime ``|nu| < |z|``.

``J_nu`` and ``Y_nu`` are assembled as ``M cos(alpha)`` and ``M sin(alpha)``
from asymptotic expansions of the modulus ``M**2 = J**2 + Y**2`` and the phase
``alpha``.  Neither function oscillates, so both series converge to useful
accuracy with a handful of terms once ``|z|`` is comfortably above ``|nu|``.
"""

__version__ = "0.1.0"

from .errors import (
    BesselOverflowError,
    ConvergenceError,
    DomainError,
    IntegerOrderWarning,
    PrecisionExhaustedError,
)
from .eval import EvalResult, EvalWarning, besselj, bessely, estimate_error, eval_jy
from .oracle import nicholson_modulus_sq, oracle_j, oracle_k0, oracle_y
from .phase import (
    PhaseResult,
    TruncationPolicy,
    general_basis_phase_derivative,
    modulus_squared,
    phase_constant,
    phase_derivative,
    phase_value,
)
from .series import Order, TermSequence, modulus_term_ratios, reciprocal_series
from .validate import KummerReport, kummer_report, kummer_residual, reconstruct_uv

__all__ = [
    "BesselOverflowError",
    "ConvergenceError",
    "DomainError",
    "EvalResult",
    "EvalWarning",
    "IntegerOrderWarning",
    "KummerReport",
    "Order",
    "PhaseResult",
    "PrecisionExhaustedError",
    "TermSequence",
    "TruncationPolicy",
    "besselj",
    "bessely",
    "estimate_error",
    "eval_jy",
    "general_basis_phase_derivative",
    "kummer_report",
    "kummer_residual",
    "modulus_squared",
    "modulus_term_ratios",
    "nicholson_modulus_sq",
    "oracle_j",
    "oracle_k0",
    "oracle_y",
    "phase_constant",
    "phase_derivative",
    "phase_value",
    "reciprocal_series",
    "reconstruct_uv",
]
