"""Numeric probes for continuous solutions on the real line.

A continuous solution ``f`` for modulus ``a`` also solves the equation for
every power ``a^k``, which rewrites as

    f(a^k x) / a^(k n) = a^-k * sum_{l < a^k} f(x + l / a^k),

a left Riemann sum of ``f`` over ``[x, x+1]``.  The probes here tabulate both
sides, approximate reals by ``r / (a^s - 1)``, and split a solution into a
multiple of ``B_n`` plus a 1-periodic remainder.
"""

from __future__ import annotations

import math
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Sequence

import numpy as np

from .bernoulli import bernoulli_poly
from .exact_algebra import Polynomial, poly_definite_integral, poly_derivative, poly_eval

__all__ = [
    "RIEMANN_SAMPLE_CAP",
    "SampledFunction",
    "ProbeReport",
    "DenseApproximant",
    "CapExceeded",
    "from_polynomial",
    "periodized",
    "riemann_sum_lhs",
    "scaling_limit_probe",
    "dense_approximate",
    "simpson",
    "theorem4_decompose",
]

RIEMANN_SAMPLE_CAP = 1 << 24
BOUNDARY_EPS = 1e-12


class CapExceeded(ValueError):
    pass


@dataclass(frozen=True)
class SampledFunction:
    """A deterministic real function under test.

    ``vectorized`` means ``eval`` also accepts numpy arrays.  ``poly`` is set
    when the function is exactly a rational polynomial, which lets probes
    compare against exact integrals.
    """

    eval: Callable[[Any], Any]
    label: str
    known_period: float | None = None
    vectorized: bool = False
    poly: Polynomial | None = None

    def __call__(self, x):
        return self.eval(x)


def from_polynomial(p: Polynomial, label: str | None = None) -> SampledFunction:
    coeffs = [float(c) for c in reversed(p.coeffs)] or [0.0]
    return SampledFunction(lambda x: np.polyval(coeffs, x), label or str(p),
                           vectorized=True, poly=p)


def periodized(p: Polynomial, label: str | None = None) -> SampledFunction:
    """``x -> p(<x>)``."""
    coeffs = [float(c) for c in reversed(p.coeffs)] or [0.0]
    return SampledFunction(lambda x: np.polyval(coeffs, x - np.floor(x)),
                           label or f"periodized({p})", known_period=1.0, vectorized=True)


@dataclass(frozen=True)
class ProbeReport:
    quantity: str
    observed: float
    expected: float | None
    bound: float
    iterations: int
    extras: dict[str, Any] = field(default_factory=dict)

    @property
    def success(self) -> bool:
        return self.expected is None or abs(self.observed - self.expected) <= self.bound


@dataclass(frozen=True)
class DenseApproximant:
    """``value = r / (a^s - 1)``, the floor approximation of ``target`` from below.

    ``error = target - value`` is exact: a float target is taken at its exact
    binary value.  ``boundary`` flags float targets whose scaled value sits
    within ``1e-12`` of an integer, where the floor is sensitive to how the
    float was produced.
    """

    a: int
    s: int
    r: int
    value: Fraction
    target: float | Fraction
    error: Fraction
    boundary: bool = False


def riemann_sum_lhs(f: SampledFunction, n: int, a: int, x: float, k: int,
                    cap: int = RIEMANN_SAMPLE_CAP) -> float:
    """``a^-k * sum_{l < a^k} f(x + l / a^k)``.

    The sum does not involve ``n``; it is accepted so callers can pass the
    equation parameters through unchanged.
    """
    if a < 2 or k < 1:
        raise ValueError("need a >= 2 and k >= 1")
    m = a**k
    if m > cap:
        raise CapExceeded(f"a^k = {m} exceeds the sample cap {cap}")
    if f.vectorized:
        pts = x + np.arange(m, dtype=float) / m
        vals = np.asarray(f(pts), dtype=float).tolist()
    else:
        vals = [f(x + l / m) for l in range(m)]
    return math.fsum(vals) / m


def _derivative_bound(p: Polynomial, lo: float, hi: float) -> float:
    r = max(abs(lo), abs(hi))
    return sum(abs(float(c)) * r**i for i, c in enumerate(poly_derivative(p).coeffs))


def scaling_limit_probe(f: SampledFunction, n: int, a: int, x, k_list: Sequence[int],
                        sigma: float | None = None) -> ProbeReport:
    """Tabulate ``f(a^k x) / a^(k n)`` and compare the last entry with its limit.

    The limit is ``int_x^{x+1} f``, taken exactly when ``f`` is a polynomial
    and as ``sigma * x^n`` otherwise (when ``sigma`` is given).  For a
    polynomial solution the reported bound is the left Riemann sum error
    ``a^-k * max|f'| / 2`` over ``[x, x+1]`` plus a rounding allowance;
    otherwise it is the change between the last two table entries.
    """
    if not k_list:
        raise ValueError("k_list is empty")
    xr = Fraction(x) if isinstance(x, (int, float, Fraction)) else None
    table = []
    for k in k_list:
        if f.poly is not None and xr is not None:
            val = float(poly_eval(f.poly, a**k * xr) / Fraction(a) ** (k * n))
        else:
            val = float(f(a**k * x)) / float(a) ** (k * n)
        table.append((k, val))
    observed = table[-1][1]
    k_last = k_list[-1]
    if f.poly is not None and xr is not None:
        expected = float(poly_definite_integral(f.poly, xr, xr + 1))
        bound = _derivative_bound(f.poly, float(x), float(x) + 1) / (2 * float(a) ** k_last)
        # the bound is attained for linear f; leave room for rounding
        bound += 64 * sys.float_info.epsilon * max(1.0, abs(expected))
    else:
        expected = None if sigma is None else sigma * float(x) ** n
        bound = abs(table[-1][1] - table[-2][1]) if len(table) > 1 else math.inf
    return ProbeReport("scaled_value", observed, expected, bound, len(table),
                       {"table": table, "a": a, "n": n, "x": x})


def dense_approximate(u, a: int, s: int) -> DenseApproximant:
    if a < 2 or s < 1:
        raise ValueError("need a >= 2 and s >= 1")
    d = a**s - 1
    ur = Fraction(u)
    scaled = d * ur
    r = math.floor(scaled)
    value = Fraction(r, d)
    boundary = False
    if isinstance(u, float):
        gap = scaled - r
        boundary = gap < BOUNDARY_EPS or 1 - gap < BOUNDARY_EPS
    return DenseApproximant(a, s, r, value, u, ur - value, boundary)


def simpson(f: SampledFunction, lo: float, hi: float, panels: int) -> float:
    """Composite Simpson rule with ``panels`` parabolic panels."""
    m = 2 * panels
    xs = lo + (hi - lo) * np.arange(m + 1, dtype=float) / m
    if f.vectorized:
        ys = np.asarray(f(xs), dtype=float)
    else:
        ys = np.array([f(t) for t in xs], dtype=float)
    w = np.ones(m + 1)
    w[1:-1:2] = 4.0
    w[2:-1:2] = 2.0
    return (hi - lo) / (3 * m) * math.fsum((w * ys).tolist())


def theorem4_decompose(f: SampledFunction, n: int, quad_points: int = 1024) -> ProbeReport:
    """Split ``f = sigma * B_n + tau`` with ``sigma = int_1^2 f``.

    ``sigma`` uses composite Simpson with ``quad_points`` panels; the bound is
    the Richardson estimate ``|S(P) - S(P/2)| / 15``.  The remainder ``tau``
    is checked for 1-periodicity on a 33-point grid of ``[0, 1]``.

    Assumes, without checking, that ``int_h^{h+1} f / h^n`` has a limit as
    ``h -> 0``; no finite sample can test it.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if quad_points < 2:
        raise ValueError("need at least 2 panels")
    sigma = simpson(f, 1.0, 2.0, quad_points)
    coarse = simpson(f, 1.0, 2.0, quad_points // 2)
    err = abs(sigma - coarse) / 15.0
    b = bernoulli_poly(n)

    def tau(t: float) -> float:
        return float(f(t)) - sigma * b.eval_float(t)

    grid = [j / 32 for j in range(33)]
    defect = max(abs(tau(t + 1) - tau(t)) for t in grid)
    return ProbeReport("sigma", sigma, None, err, 2 * quad_points + 1,
                       {"periodicity_defect": defect, "grid_points": len(grid),
                        "quadrature_error_estimate": err})
