"""Symbolic residuals of the Raabe multiplication equation.

For integers ``n >= 0`` and ``a >= 1`` the Raabe residual of a polynomial is

    R[p](X) = p(aX) - a^(n-1) * sum_{k<a} p(X + k/a)

and ``p`` solves the equation exactly when ``R[p]`` is the zero polynomial.
Everything here is exact; uniqueness among polynomials is witnessed by the
kernel of ``p -> R[p]`` on a bounded-degree coefficient space.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .bernoulli import bernoulli_poly
from .exact_algebra import (
    Polynomial,
    RationalMatrix,
    ZERO,
    kernel_basis,
    poly_compose_affine,
    poly_derivative,
    poly_scale,
    poly_sub,
)
from .reports import ResidualReport, polynomial_report

__all__ = [
    "RaabeParams",
    "raabe_residual",
    "carlitz_residual",
    "carlitz_residual_poly",
    "check_lemma2_operator_identity",
    "check_lemma3_composition",
    "check_prime_reduction",
    "residual_matrix",
    "solution_kernel",
    "monic_solution",
]


@dataclass(frozen=True)
class RaabeParams:
    n: int
    a: int

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("n must be >= 0")
        if self.a < 1:
            raise ValueError("a must be >= 1")


def _params(params) -> RaabeParams:
    if isinstance(params, RaabeParams):
        return params
    n, a = params
    return RaabeParams(n, a)


def _pow(base: int, e: int) -> Fraction:
    # exponents below zero occur for n = 0
    return Fraction(base) ** e


def raabe_residual(p: Polynomial, params) -> Polynomial:
    pr = _params(params)
    n, a = pr.n, pr.a
    if a == 1:
        # p(X) - 1 * p(X); trivial equation
        return ZERO
    lhs = poly_compose_affine(p, a, 0)
    total = ZERO
    for k in range(a):
        total = total + poly_compose_affine(p, 1, Fraction(k, a))
    return poly_sub(lhs, poly_scale(_pow(a, n - 1), total))


def carlitz_residual_poly(p: Polynomial, n: int, a: int, b: int) -> Polynomial:
    """Carlitz two-modulus residual with ``p`` in place of ``B_n``."""
    if a < 1 or b < 1:
        raise ValueError("a and b must be >= 1")
    if n < 0:
        raise ValueError("n must be >= 0")

    def side(m: int, other: int) -> Polynomial:
        acc = ZERO
        for k in range(m):
            acc = acc + poly_compose_affine(p, Fraction(1, m), Fraction(other * k, m))
        return poly_scale(_pow(m, n - 1), acc)

    return poly_sub(side(a, b), side(b, a))


def carlitz_residual(n: int, a: int, b: int) -> Polynomial:
    return carlitz_residual_poly(bernoulli_poly(n), n, a, b)


def check_lemma2_operator_identity(p: Polynomial, params) -> ResidualReport:
    """Check ``(R_{n,a}[p])' = a * R_{n-1,a}[p']``, which holds for every ``p``."""
    pr = _params(params)
    if pr.n < 1:
        raise ValueError("n must be >= 1")
    lhs = poly_derivative(raabe_residual(p, pr))
    rhs = poly_scale(pr.a, raabe_residual(poly_derivative(p), (pr.n - 1, pr.a)))
    return polynomial_report(poly_sub(lhs, rhs), {"n": pr.n, "a": pr.a})


def check_lemma3_composition(n: int, a: int, b: int, p: Polynomial) -> ResidualReport:
    """If ``p`` solves the equation for ``a`` and for ``b``, check it does for ``a*b``."""
    params = {"n": n, "a": a, "b": b}
    failing = [m for m in (a, b) if not raabe_residual(p, (n, m)).is_zero()]
    if failing:
        return ResidualReport(
            is_zero=False,
            residual=None,
            params=params,
            witness={"hypothesis_failed_for": failing},
            hypothesis_met=False,
        )
    report = polynomial_report(raabe_residual(p, (n, a * b)), params)
    return report


def _factor(m: int) -> list[int]:
    out, d = [], 2
    while d * d <= m:
        while m % d == 0:
            out.append(d)
            m //= d
        d += 1
    if m > 1:
        out.append(m)
    return out


def check_prime_reduction(p: Polynomial, n: int, limit: int) -> ResidualReport:
    """Extend prime-modulus solutions to every modulus up to ``limit``.

    Requires zero residual at each prime ``<= limit``, then reaches every
    composite by repeated :func:`check_lemma3_composition` along its
    factorization.  The first composite whose conclusion fails is the witness.
    """
    primes = [m for m in range(2, limit + 1) if _factor(m) == [m]]
    bad = [q for q in primes if not raabe_residual(p, (n, q)).is_zero()]
    params = {"n": n, "limit": limit}
    if bad:
        return ResidualReport(False, None, params, {"hypothesis_failed_for": bad}, False)
    for m in range(4, limit + 1):
        fs = _factor(m)
        if len(fs) == 1:
            continue
        acc = fs[0]
        for q in fs[1:]:
            step = check_lemma3_composition(n, acc, q, p)
            if not step.passed:
                return ResidualReport(False, step.residual, params, {"modulus": acc * q})
            acc *= q
    return ResidualReport(True, ZERO, params)


def residual_matrix(n: int, a: int, max_degree: int) -> RationalMatrix:
    """Matrix of ``p -> R_{n,a}[p]`` on polynomials of degree ``<= max_degree``.

    Column ``j`` holds the coefficients of ``R_{n,a}[X^j]``.
    """
    cols = [raabe_residual(Polynomial.monomial(j), (n, a)).coeffs for j in range(max_degree + 1)]
    return RationalMatrix.from_columns(cols, max_degree + 1)


def solution_kernel(n: int, a: int, max_degree: int) -> list[Polynomial]:
    """Basis of the polynomial solutions of degree ``<= max_degree``.

    Each basis polynomial has its lowest nonzero coefficient equal to 1.
    """
    if a < 2:
        raise ValueError("a must be >= 2")
    if max_degree < 0:
        raise ValueError("max_degree must be >= 0")
    return [Polynomial(v) for v in kernel_basis(residual_matrix(n, a, max_degree))]


def monic_solution(n: int, a: int) -> Polynomial:
    """The unique monic polynomial solution, recovered from the kernel."""
    (v,) = solution_kernel(n, a, n)
    return poly_scale(1 / v.leading, v)
