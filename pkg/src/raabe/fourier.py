"""One-periodic solutions given by Fourier series.

A coefficient spec describes

    f(x) = sum_{k>=1} (u_k cos(2 pi k x) + v_k sin(2 pi k x)) / k^n

which solves the Raabe equation for modulus ``a`` exactly when ``u_{ak} = u_k``
and ``v_{ak} = v_k`` for every ``k``.  That criterion is checked exactly on
rational weights.  Numeric evaluation is separate and always comes with a
guaranteed truncation bound.
"""

from __future__ import annotations

import enum
import math
import os
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

import numpy as np

from .reports import ResidualReport

__all__ = [
    "DEFAULT_TRUNCATION_CAP",
    "LOG_SIN_TERMS",
    "EnvelopeClass",
    "CoefficientSpec",
    "FourierEvalResult",
    "ConvergenceError",
    "ToleranceUnreachable",
    "BUILTIN_SPECS",
    "builtin_spec",
    "coeff_residual_check",
    "truncation_cap",
    "tail_bound",
    "partial_sum",
    "fourier_eval",
    "periodized_bernoulli_eval",
    "conjugate_bernoulli_eval",
    "log_sin_check",
    "numeric_residual",
    "frac",
]

DEFAULT_TRUNCATION_CAP = 10**7
LOG_SIN_TERMS = 2 * 10**6
_CHUNK = 1 << 20
_LN2 = math.log(2.0)


class ConvergenceError(ValueError):
    """The series is not absolutely summable with a guaranteed tail here."""


class ToleranceUnreachable(ValueError):
    """The truncation needed for the requested tolerance exceeds the cap."""

    def __init__(self, tol: float, cap: int, required: int | None = None):
        self.tol, self.cap, self.required = tol, cap, required
        need = f" (needs N >= {required})" if required else ""
        super().__init__(f"tolerance {tol:g} unreachable within {cap} terms{need}")


class EnvelopeClass(enum.Enum):
    CONSTANT = "constant"  # C
    LOG = "log"  # C * (1 + log2 k)
    LINEAR = "linear"  # C * k

    @property
    def order(self) -> int:
        return 1 if self is EnvelopeClass.LINEAR else 0


@dataclass(frozen=True)
class CoefficientSpec:
    """Named weight sequences ``k -> (u_k, v_k)`` with a growth envelope.

    ``u_vec``/``v_vec`` are optional numpy versions of ``u``/``v`` returning
    floats for an int64 array of indices.  ``constant_coeffs`` is set when
    both sequences are independent of ``k``; it unlocks the summation-by-parts
    tail bound, which is what makes ``n = 1`` evaluable away from integers.
    """

    name: str
    n: int
    u: Callable[[int], Fraction]
    v: Callable[[int], Fraction]
    envelope_class: EnvelopeClass
    envelope_constant: float = 1.0
    constant_coeffs: tuple[Fraction, Fraction] | None = None
    u_vec: Callable[[np.ndarray], np.ndarray] | None = None
    v_vec: Callable[[np.ndarray], np.ndarray] | None = None

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be >= 1")

    def envelope(self, k: int) -> float:
        c = self.envelope_constant
        if self.envelope_class is EnvelopeClass.CONSTANT:
            return c
        if self.envelope_class is EnvelopeClass.LOG:
            return c * (1.0 + math.log2(k))
        return c * k

    def weights(self, ks: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        if self.u_vec is not None:
            u = self.u_vec(ks)
        else:
            u = np.fromiter((float(self.u(int(k))) for k in ks), float, len(ks))
        if self.v_vec is not None:
            v = self.v_vec(ks)
        else:
            v = np.fromiter((float(self.v(int(k))) for k in ks), float, len(ks))
        return u, v


@dataclass(frozen=True)
class FourierEvalResult:
    value: float
    truncation_N: int
    tail_bound: float
    requested_tol: float


# -- builtin sequences -------------------------------------------------------

def _s2(k: int) -> int:
    return bin(k).count("1")


def _odd(k: int) -> int:
    return k // (k & -k)


def _pow2(k: int) -> int:
    return 1 if k & (k - 1) == 0 else 0


def _zeros(ks):
    return np.zeros(len(ks))


def _ones(ks):
    return np.ones(len(ks))


def _s2_vec(ks):
    return np.bitwise_count(ks).astype(float)


def _odd_vec(ks):
    return (ks // (ks & -ks)).astype(float)


def _pow2_vec(ks):
    return ((ks & (ks - 1)) == 0).astype(float)


def _const(c: int) -> Callable[[int], Fraction]:
    value = Fraction(c)
    return lambda k: value


def _wrap(fn: Callable[[int], int]) -> Callable[[int], Fraction]:
    return lambda k: Fraction(fn(k))


BUILTIN_SPECS = ("constant", "s2", "odd_part", "pow2_indicator", "conjugate_constant")


def builtin_spec(name: str, n: int) -> CoefficientSpec:
    """One of the named example solutions, with cosine weights only unless
    the name is ``conjugate_constant`` (``u_k = 0``, ``v_k = 1``)."""
    zero = _const(0)
    if name == "constant":
        return CoefficientSpec(name, n, _const(1), zero, EnvelopeClass.CONSTANT,
                               constant_coeffs=(Fraction(1), Fraction(0)),
                               u_vec=_ones, v_vec=_zeros)
    if name == "conjugate_constant":
        return CoefficientSpec(name, n, zero, _const(1), EnvelopeClass.CONSTANT,
                               constant_coeffs=(Fraction(0), Fraction(1)),
                               u_vec=_zeros, v_vec=_ones)
    if name == "s2":
        return CoefficientSpec(name, n, _wrap(_s2), zero, EnvelopeClass.LOG,
                               u_vec=_s2_vec, v_vec=_zeros)
    if name == "odd_part":
        if n < 3:
            raise ConvergenceError("odd_part grows linearly; it needs n >= 3")
        return CoefficientSpec(name, n, _wrap(_odd), zero, EnvelopeClass.LINEAR,
                               u_vec=_odd_vec, v_vec=_zeros)
    if name == "pow2_indicator":
        return CoefficientSpec(name, n, _wrap(_pow2), zero, EnvelopeClass.CONSTANT,
                               u_vec=_pow2_vec, v_vec=_zeros)
    raise KeyError(f"unknown spec {name!r}; choose from {', '.join(BUILTIN_SPECS)}")


# -- exact coefficient criterion ----------------------------------------------

def coeff_residual_check(spec: CoefficientSpec, a: int, k_max: int) -> ResidualReport:
    """Check ``u_{ak} = u_k`` and ``v_{ak} = v_k`` for ``1 <= k <= k_max // a``.

    ``residual`` lists every failing ``k``; the witness is the first one.
    """
    if a < 2:
        raise ValueError("a must be >= 2")
    if k_max < a:
        raise ValueError("k_max must be >= a")
    failures: list[int] = []
    witness = None
    for k in range(1, k_max // a + 1):
        for label, seq in (("u", spec.u), ("v", spec.v)):
            hi, lo = seq(a * k), seq(k)
            if hi != lo:
                failures.append(k)
                if witness is None:
                    witness = {"k": k, "ak": a * k, "sequence": label,
                               "value_at_ak": hi, "value_at_k": lo}
                break
    params = {"spec": spec.name, "n": spec.n, "a": a, "k_max": k_max}
    return ResidualReport(not failures, failures, params, witness)


# -- numeric evaluation ---------------------------------------------------------

def truncation_cap() -> int:
    env = os.environ.get("RAABE_TRUNCATION_CAP")
    return int(float(env)) if env else DEFAULT_TRUNCATION_CAP


def frac(x):
    """Fractional part ``x - floor(x)``; exact for ints and Fractions."""
    return x - math.floor(x)


def _integral_tail(spec: CoefficientSpec, N: int) -> float:
    # integral-test bound on sum_{k>N} amp(k) / k^n
    n = spec.n
    if spec.constant_coeffs is not None:
        u, v = spec.constant_coeffs
        amp = math.hypot(float(u), float(v))
    else:
        amp = 2.0 * spec.envelope_constant
    m = n - spec.envelope_class.order
    if m < 2:
        return math.inf
    if spec.envelope_class is EnvelopeClass.LOG:
        # int_N^inf (1 + log2 t) t^-n dt, exact
        p = N ** (n - 1)
        return amp * ((1.0 + math.log2(N)) / ((n - 1) * p) + 1.0 / (_LN2 * (n - 1) ** 2 * p))
    return amp / ((m - 1) * float(N) ** (m - 1))


def _abel_tail(spec: CoefficientSpec, xf: float, N: int) -> float:
    # |sum_{k>N} e^{2 pi i k x} / k^n| <= (N+1)^-n / |sin(pi x)| for constant weights
    if spec.constant_coeffs is None:
        return math.inf
    u, v = spec.constant_coeffs
    if u == 0 and xf in (0.0, 0.5):
        # pure sine series at a point where every sin(2 pi k x) is exactly zero
        return 0.0
    s = abs(math.sin(math.pi * xf))
    if s == 0.0:
        return math.inf
    return math.hypot(float(u), float(v)) / (s * float(N + 1) ** spec.n)


def tail_bound(spec: CoefficientSpec, x, N: int) -> float:
    """Guaranteed bound on ``|f(x) - S_N(x)|``."""
    xf = float(frac(x))
    return min(_integral_tail(spec, N), _abel_tail(spec, xf, N))


def _least_truncation(spec: CoefficientSpec, xf: float, tol: float, cap: int) -> tuple[int, float]:
    def bound(N):
        return min(_integral_tail(spec, N), _abel_tail(spec, xf, N))

    def least(lo, hi):
        # bound(hi) <= tol; bound is nonincreasing in N
        if bound(lo) <= tol:
            return lo
        while hi - lo > 1:
            mid = (lo + hi) // 2
            if bound(mid) <= tol:
                hi = mid
            else:
                lo = mid
        return hi

    if bound(cap) > tol:
        far = 1000 * cap
        required = least(cap, far) if bound(far) <= tol else None
        raise ToleranceUnreachable(tol, cap, required)
    N = least(1, cap)
    return N, bound(N)


def _phases(x, ks: np.ndarray) -> np.ndarray:
    """``<k x>`` for each k; exact for rationals with a small denominator."""
    if isinstance(x, (int, Fraction)):
        x = Fraction(x)
        p, q = x.numerator, x.denominator
        if p * int(ks[-1]) < 2**62:
            return ((ks * p) % q) / q
        x = float(x)
    return np.mod(ks * x, 1.0)


def partial_sum(spec: CoefficientSpec, x, N: int) -> float:
    """``S_N(x)``, summed in ascending ``k`` with exactly rounded chunk sums."""
    x = frac(x)
    chunk_sums = []
    for start in range(1, N + 1, _CHUNK):
        ks = np.arange(start, min(start + _CHUNK, N + 1), dtype=np.int64)
        theta = 2.0 * math.pi * _phases(x, ks)
        u, v = spec.weights(ks)
        kn = np.power(ks.astype(float), -spec.n)
        terms = (u * np.cos(theta) + v * np.sin(theta)) * kn
        chunk_sums.append(math.fsum(terms.tolist()))
    return math.fsum(chunk_sums)


def _check_margin(spec: CoefficientSpec, x) -> None:
    m = spec.n - spec.envelope_class.order
    if m >= 2:
        return
    if spec.constant_coeffs is not None and m == 1 and frac(x) != 0:
        return
    raise ConvergenceError(
        f"spec {spec.name!r} with n={spec.n} has no guaranteed tail bound at x={x}"
    )


def fourier_eval(spec: CoefficientSpec, x, tol: float, cap: int | None = None) -> FourierEvalResult:
    """Evaluate the series at ``x`` to within ``tol``.

    ``N`` is the least truncation whose guaranteed tail bound is at most
    ``tol``.  Only the fractional part of ``x`` is used, so ``x`` and ``x + m``
    give bit-identical results.  Passing ``x`` as a Fraction keeps the
    phases ``<k x>`` exact.
    """
    if not tol > 0:
        raise ValueError("tol must be positive")
    cap = truncation_cap() if cap is None else cap
    x = frac(x)
    _check_margin(spec, x)
    N, bound = _least_truncation(spec, float(x), tol, cap)
    return FourierEvalResult(partial_sum(spec, x, N), N, bound, tol)


def _bernoulli_factor(n: int) -> float:
    return -2.0 * math.factorial(n) / (2.0 * math.pi) ** n


def _scaled(spec: CoefficientSpec, scale: float, x, tol: float, cap) -> FourierEvalResult:
    inner = fourier_eval(spec, x, tol / abs(scale), cap)
    return FourierEvalResult(scale * inner.value, inner.truncation_N,
                             abs(scale) * inner.tail_bound, tol)


def _check_bernoulli_domain(n: int, x) -> None:
    if n < 1:
        raise ValueError("n must be >= 1")
    if n == 1 and frac(x) == 0:
        raise ValueError("the n = 1 series is excluded at integer x")


def periodized_bernoulli_eval(n: int, x, tol: float, cap: int | None = None) -> FourierEvalResult:
    """``-2 n! / (2 pi)^n * sum_k cos(2 pi k <x> - n pi / 2) / k^n``, i.e. ``B_n(<x>)``."""
    _check_bernoulli_domain(n, x)
    w = _bernoulli_factor(n)
    # cos(t - n pi/2) is +-cos t for even n and +-sin t for odd n
    if n % 2 == 0:
        return _scaled(builtin_spec("constant", n), w * (-1) ** (n // 2), x, tol, cap)
    return _scaled(builtin_spec("conjugate_constant", n), w * (-1) ** ((n - 1) // 2), x, tol, cap)


def conjugate_bernoulli_eval(n: int, x, tol: float, cap: int | None = None) -> FourierEvalResult:
    """``-2 n! / (2 pi)^n * sum_k sin(2 pi k <x> - n pi / 2) / k^n``."""
    _check_bernoulli_domain(n, x)
    w = _bernoulli_factor(n)
    # sin(t - n pi/2) is +-sin t for even n and -+cos t for odd n
    if n % 2 == 0:
        return _scaled(builtin_spec("conjugate_constant", n), w * (-1) ** (n // 2), x, tol, cap)
    return _scaled(builtin_spec("constant", n), -w * (-1) ** ((n - 1) // 2), x, tol, cap)


def log_sin_check(x, tol: float, terms: int = LOG_SIN_TERMS) -> ResidualReport:
    """Compare ``log(2|sin(pi x)|)`` with ``-sum_{k<=N} cos(2 pi k x)/k``.

    The series converges only conditionally, so ``N`` is fixed rather than
    chosen from ``tol``; the report carries the achieved discrepancy.
    """
    x = frac(x)
    if x == 0:
        raise ValueError("log(2|sin(pi x)|) is singular at integer x")
    direct = math.log(2.0 * abs(math.sin(math.pi * float(x))))
    spec = builtin_spec("constant", 1)
    series = -partial_sum(spec, x, terms)
    gap = abs(direct - series)
    params = {"x": x, "terms": terms, "tol": tol, "direct": direct, "series": series,
              "a_priori_tail": tail_bound(spec, x, terms)}
    witness = None if gap <= tol else {"discrepancy": gap}
    return ResidualReport(gap <= tol, [gap], params, witness)


def numeric_residual(spec: CoefficientSpec, a: int, xs: Sequence, tol: float,
                     cap: int | None = None) -> ResidualReport:
    """Sample ``|f(ax) - a^(n-1) sum_j f(x + j/a)|`` with ``tol``-accurate evaluations.

    Each evaluation is off by at most ``tol``, so an exact solution shows
    residuals no larger than ``(a^(n-1) * a + 1) * tol``; larger ones fail.
    """
    n = spec.n
    allowed = (a ** (n - 1) * a + 1) * tol
    values = []
    witness = None
    for x in xs:
        exact = isinstance(x, (int, Fraction))
        shifts = [x + (Fraction(j, a) if exact else j / a) for j in range(a)]
        lhs = fourier_eval(spec, a * x, tol, cap).value
        rhs = a ** (n - 1) * math.fsum(fourier_eval(spec, s, tol, cap).value for s in shifts)
        r = abs(lhs - rhs)
        values.append(r)
        if r > allowed and witness is None:
            witness = {"x": x, "residual": r, "allowed": allowed}
    params = {"spec": spec.name, "n": n, "a": a, "tol": tol, "allowed": allowed}
    return ResidualReport(witness is None, values, params, witness)
