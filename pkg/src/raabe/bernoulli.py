"""Bernoulli polynomials, built two independent ways.

:func:`bernoulli_poly` integrates ``B_n' = n B_{n-1}`` and fixes the constant
by ``int_0^1 B_n = 0``.  :func:`bernoulli_poly_oracle` expands the generating
function ``t e^{Xt} / (e^t - 1)`` as a truncated power series.  The two share
nothing beyond the polynomial type.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction
from math import factorial

from .exact_algebra import (
    Polynomial,
    poly_antiderivative,
    poly_compose_affine,
    poly_definite_integral,
    poly_derivative,
    poly_scale,
    poly_sub,
)
from .reports import ResidualReport, polynomial_report

__all__ = [
    "DEFAULT_TABLE_SIZE",
    "BernoulliTable",
    "bernoulli_poly",
    "bernoulli_poly_oracle",
    "check_identity_eq4",
    "check_identity_eq14",
    "default_table",
]

DEFAULT_TABLE_SIZE = 64

_lock = threading.Lock()
_cache: list[Polynomial] = [Polynomial([1])]


def _next_bernoulli(prev: Polynomial, n: int) -> Polynomial:
    prim = poly_scale(n, poly_antiderivative(prev))
    shift = -poly_definite_integral(prim, 0, 1)
    return prim + shift


def bernoulli_poly(n: int) -> Polynomial:
    """Exact ``B_n(X)``; results are memoized across calls."""
    if n < 0:
        raise ValueError("n must be >= 0")
    if n >= len(_cache):
        with _lock:
            while len(_cache) <= n:
                _cache.append(_next_bernoulli(_cache[-1], len(_cache)))
    return _cache[n]


def _reciprocal_series(c: list[Fraction], order: int) -> list[Fraction]:
    # c[0] must be nonzero
    g = [1 / c[0]]
    for m in range(1, order + 1):
        s = sum((c[j] * g[m - j] for j in range(1, min(m, len(c) - 1) + 1)), Fraction(0))
        g.append(-s / c[0])
    return g


def bernoulli_poly_oracle(n: int) -> Polynomial:
    """``B_n(X)`` read off the generating function ``t e^{Xt}/(e^t - 1)``."""
    if n < 0:
        raise ValueError("n must be >= 0")
    # (e^t - 1)/t = sum_j t^j / (j+1)!
    denom = [Fraction(1, factorial(j + 1)) for j in range(n + 1)]
    g = _reciprocal_series(denom, n)
    # [t^n] e^{Xt} * g(t) = sum_j X^j / j! * g[n-j]
    coeffs = [Fraction(1, factorial(j)) * g[n - j] for j in range(n + 1)]
    return poly_scale(factorial(n), Polynomial(coeffs))


@dataclass(frozen=True)
class BernoulliTable:
    """Immutable table ``polys[n] = B_n(X)`` for ``n <= max_index``.

    :meth:`with_entry` builds a deliberately corrupted copy, which is how the
    identity checks are exercised on failing input.
    """

    polys: tuple[Polynomial, ...]

    @classmethod
    def build(cls, max_index: int = DEFAULT_TABLE_SIZE) -> BernoulliTable:
        return cls(tuple(bernoulli_poly(n) for n in range(max_index + 1)))

    @property
    def max_index(self) -> int:
        return len(self.polys) - 1

    def __getitem__(self, n: int) -> Polynomial:
        return self.polys[n]

    def with_entry(self, n: int, p: Polynomial) -> BernoulliTable:
        polys = list(self.polys)
        polys[n] = p
        return BernoulliTable(tuple(polys))


_default_table: BernoulliTable | None = None


def default_table() -> BernoulliTable:
    global _default_table
    if _default_table is None:
        _default_table = BernoulliTable.build()
    return _default_table


def _table_for(n: int, table: BernoulliTable | None) -> BernoulliTable:
    if table is None:
        table = default_table()
    if n > table.max_index:
        table = BernoulliTable.build(n)
    return table


def check_identity_eq4(n: int, table: BernoulliTable | None = None) -> ResidualReport:
    """Residual of ``B_n' - n B_{n-1}``."""
    if n < 1:
        raise ValueError("n must be >= 1")
    t = _table_for(n, table)
    residual = poly_sub(poly_derivative(t[n]), poly_scale(n, t[n - 1]))
    return polynomial_report(residual, {"n": n})


def check_identity_eq14(n: int, table: BernoulliTable | None = None) -> ResidualReport:
    """Residual of ``B_n(X+1) - B_n(X) - n X^{n-1}``."""
    if n < 1:
        raise ValueError("n must be >= 1")
    t = _table_for(n, table)
    b = t[n]
    residual = poly_compose_affine(b, 1, 1) - b - Polynomial.monomial(n - 1, n)
    return polynomial_report(residual, {"n": n})
