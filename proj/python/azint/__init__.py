"""Creative telescoping for hyperexponential integrands.

Thin Python layer over the C++ core: operator/certificate derivation,
exact verification, recurrence unrolling, numerical quadrature, and the
e^-1 approximant analysis.
"""

from azint._core import (
    ExprParseError,
    MathError,
    NotHyperexponentialError,
    analyze_e,
    binomial_sum_identity,
    checksol,
    constant_inv_e,
    derive,
    derivative,
    gcd,
    normalize,
    operator_equivalent,
    quad,
    shift,
    terms,
    verify,
    __version__,
)

__all__ = [
    "ExprParseError",
    "MathError",
    "NotHyperexponentialError",
    "analyze_e",
    "binomial_sum_identity",
    "checksol",
    "constant_inv_e",
    "derive",
    "derivative",
    "gcd",
    "normalize",
    "operator_equivalent",
    "quad",
    "shift",
    "terms",
    "verify",
    "__version__",
]
