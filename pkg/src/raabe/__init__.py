"""Exact tools for the Raabe multiplication equation

    f(a x) = a^(n-1) * (f(x) + f(x + 1/a) + ... + f(x + (a-1)/a)).

Bernoulli polynomials solve it for every ``a``; this package generates them,
checks residuals symbolically, computes polynomial solution spaces exactly,
and evaluates the periodic Fourier-series solutions with guaranteed bounds.
"""

from .bernoulli import BernoulliTable, bernoulli_poly, bernoulli_poly_oracle
from .exact_algebra import NEG_INF, Polynomial, RationalMatrix, X, kernel_basis
from .fourier import (
    CoefficientSpec,
    FourierEvalResult,
    builtin_spec,
    coeff_residual_check,
    conjugate_bernoulli_eval,
    fourier_eval,
    log_sin_check,
    periodized_bernoulli_eval,
)
from .reports import ResidualReport
from .verify import RaabeParams, carlitz_residual, raabe_residual, solution_kernel

__version__ = "0.1.0"

__all__ = [
    "BernoulliTable",
    "CoefficientSpec",
    "FourierEvalResult",
    "NEG_INF",
    "Polynomial",
    "RaabeParams",
    "RationalMatrix",
    "ResidualReport",
    "X",
    "bernoulli_poly",
    "bernoulli_poly_oracle",
    "builtin_spec",
    "carlitz_residual",
    "coeff_residual_check",
    "conjugate_bernoulli_eval",
    "fourier_eval",
    "kernel_basis",
    "log_sin_check",
    "periodized_bernoulli_eval",
    "raabe_residual",
    "solution_kernel",
]
