"""Exact rational polynomials and linear algebra.

Scalars are :class:`fractions.Fraction`, which is always stored in lowest
terms with a positive denominator.  Polynomials are dense and immutable; the
coefficient at index ``i`` belongs to ``X**i``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Union

__all__ = [
    "Rational",
    "NEG_INF",
    "Polynomial",
    "RationalMatrix",
    "as_rational",
    "poly_add",
    "poly_sub",
    "poly_scale",
    "poly_mul",
    "poly_compose_affine",
    "poly_eval",
    "poly_derivative",
    "poly_antiderivative",
    "poly_definite_integral",
    "kernel_basis",
    "X",
    "ONE",
    "ZERO",
]

Rational = Fraction
Number = Union[int, Fraction]

#: Degree of the zero polynomial.
NEG_INF = -math.inf


def as_rational(value) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings to a Fraction.

    Floats are rejected: silently importing binary rounding error into an
    exact computation is never what the caller wants.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"cannot use {type(value).__name__} as an exact rational")


class Polynomial:
    """Dense univariate polynomial over the rationals."""

    __slots__ = ("_coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [as_rational(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self._coeffs = tuple(cs)

    @classmethod
    def monomial(cls, degree: int, coeff: Number = 1) -> Polynomial:
        return cls([0] * degree + [coeff])

    @classmethod
    def constant(cls, c: Number) -> Polynomial:
        return cls([c])

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return self._coeffs

    @property
    def degree(self) -> int | float:
        """Degree, or :data:`NEG_INF` for the zero polynomial."""
        return len(self._coeffs) - 1 if self._coeffs else NEG_INF

    @property
    def leading(self) -> Fraction:
        return self._coeffs[-1] if self._coeffs else Fraction(0)

    def is_zero(self) -> bool:
        return not self._coeffs

    def is_monic(self) -> bool:
        return bool(self._coeffs) and self._coeffs[-1] == 1

    def coeff(self, i: int) -> Fraction:
        return self._coeffs[i] if 0 <= i < len(self._coeffs) else Fraction(0)

    def __len__(self) -> int:
        return len(self._coeffs)

    def __eq__(self, other) -> bool:
        if isinstance(other, Polynomial):
            return self._coeffs == other._coeffs
        if isinstance(other, (int, Fraction)):
            return self._coeffs == Polynomial([other])._coeffs
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self._coeffs)

    def __repr__(self) -> str:
        return f"Polynomial({[str(c) for c in self._coeffs]})"

    def __str__(self) -> str:
        if not self._coeffs:
            return "0"
        terms = []
        for i in range(len(self._coeffs) - 1, -1, -1):
            c = self._coeffs[i]
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            if i == 0:
                body = str(mag)
            else:
                mono = "X" if i == 1 else f"X^{i}"
                body = mono if mag == 1 else f"{mag}*{mono}"
            terms.append((sign, body))
        first_sign, first_body = terms[0]
        out = ("-" if first_sign == "-" else "") + first_body
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Polynomial([other])
        if not isinstance(other, Polynomial):
            return NotImplemented
        return poly_add(self, other)

    __radd__ = __add__

    def __neg__(self) -> Polynomial:
        return Polynomial([-c for c in self._coeffs])

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Polynomial([other])
        if not isinstance(other, Polynomial):
            return NotImplemented
        return poly_sub(self, other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return poly_scale(other, self)
        if isinstance(other, Polynomial):
            return poly_mul(self, other)
        return NotImplemented

    __rmul__ = __mul__

    def __call__(self, x):
        return poly_eval(self, x)

    def eval_float(self, x: float) -> float:
        """Horner evaluation in floating point."""
        acc = 0.0
        for c in reversed(self._coeffs):
            acc = acc * x + float(c)
        return acc


ZERO = Polynomial()
ONE = Polynomial([1])
X = Polynomial([0, 1])


def poly_add(p: Polynomial, q: Polynomial) -> Polynomial:
    a, b = p.coeffs, q.coeffs
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] += c
    return Polynomial(out)


def poly_sub(p: Polynomial, q: Polynomial) -> Polynomial:
    return poly_add(p, poly_scale(-1, q))


def poly_scale(c: Number, p: Polynomial) -> Polynomial:
    c = as_rational(c)
    if c == 0:
        return ZERO
    return Polynomial([c * x for x in p.coeffs])


def poly_mul(p: Polynomial, q: Polynomial) -> Polynomial:
    if p.is_zero() or q.is_zero():
        return ZERO
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p.coeffs):
        if a == 0:
            continue
        for j, b in enumerate(q.coeffs):
            out[i + j] += a * b
    return Polynomial(out)


def poly_compose_affine(p: Polynomial, a: Number, b: Number) -> Polynomial:
    """Return ``p(a*X + b)`` by Horner accumulation in the affine argument."""
    a, b = as_rational(a), as_rational(b)
    acc: list[Fraction] = []
    for c in reversed(p.coeffs):
        # acc <- acc * (a X + b) + c
        nxt = [Fraction(0)] * (len(acc) + 1)
        for i, v in enumerate(acc):
            nxt[i] += v * b
            nxt[i + 1] += v * a
        nxt[0] += c
        acc = nxt
    return Polynomial(acc)


def poly_eval(p: Polynomial, x: Number) -> Fraction:
    x = as_rational(x)
    acc = Fraction(0)
    for c in reversed(p.coeffs):
        acc = acc * x + c
    return acc


def poly_derivative(p: Polynomial) -> Polynomial:
    return Polynomial([i * c for i, c in enumerate(p.coeffs)][1:])


def poly_antiderivative(p: Polynomial) -> Polynomial:
    """Antiderivative with zero constant term."""
    return Polynomial([0] + [c / (i + 1) for i, c in enumerate(p.coeffs)])


def poly_definite_integral(p: Polynomial, lo: Number, hi: Number) -> Fraction:
    prim = poly_antiderivative(p)
    return poly_eval(prim, hi) - poly_eval(prim, lo)


@dataclass(frozen=True)
class RationalMatrix:
    """Row-major matrix of Fractions."""

    rows: int
    cols: int
    entries: tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.entries) != self.rows * self.cols:
            raise ValueError(
                f"expected {self.rows * self.cols} entries, got {len(self.entries)}"
            )

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence]) -> RationalMatrix:
        rows = [list(r) for r in rows]
        ncols = len(rows[0]) if rows else 0
        if any(len(r) != ncols for r in rows):
            raise ValueError("ragged rows")
        flat = tuple(as_rational(v) for r in rows for v in r)
        return cls(len(rows), ncols, flat)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], nrows: int) -> RationalMatrix:
        cols = [list(c) + [0] * (nrows - len(c)) for c in columns]
        if any(len(c) != nrows for c in cols):
            raise ValueError("column longer than the declared row count")
        flat = tuple(as_rational(cols[j][i]) for i in range(nrows) for j in range(len(cols)))
        return cls(nrows, len(cols), flat)

    def __getitem__(self, ij: tuple[int, int]) -> Fraction:
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> list[Fraction]:
        return list(self.entries[i * self.cols:(i + 1) * self.cols])

    def matvec(self, v: Sequence) -> list[Fraction]:
        if len(v) != self.cols:
            raise ValueError("dimension mismatch")
        v = [as_rational(x) for x in v]
        return [sum((a * b for a, b in zip(self.row(i), v)), Fraction(0)) for i in range(self.rows)]


def _height(c: Fraction) -> int:
    return abs(c.numerator) * c.denominator


def kernel_basis(m: RationalMatrix) -> list[list[Fraction]]:
    """Basis of the right nullspace of ``m``.

    Exact Gauss-Jordan elimination; the pivot in each column is the row
    entry of largest ``|numerator| * denominator``.  Each basis vector is
    scaled so its first nonzero entry is 1, and vectors are ordered by their
    free column.
    """
    a = [m.row(i) for i in range(m.rows)]
    pivots: list[int] = []
    r = 0
    for c in range(m.cols):
        if r >= m.rows:
            break
        best = max(range(r, m.rows), key=lambda i: _height(a[i][c]))
        if a[best][c] == 0:
            continue
        a[r], a[best] = a[best], a[r]
        inv = 1 / a[r][c]
        a[r] = [v * inv for v in a[r]]
        for i in range(m.rows):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [vi - f * vr for vi, vr in zip(a[i], a[r])]
        pivots.append(c)
        r += 1

    free = [c for c in range(m.cols) if c not in set(pivots)]
    basis = []
    for fc in free:
        v = [Fraction(0)] * m.cols
        v[fc] = Fraction(1)
        for row, pc in enumerate(pivots):
            v[pc] = -a[row][fc]
        lead = next(x for x in v if x != 0)
        basis.append([x / lead for x in v])
    return basis
