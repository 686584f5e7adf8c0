import math
import random
from fractions import Fraction as F

import numpy as np
import pytest
from hypothesis import given, strategies as st

from raabe.bernoulli import bernoulli_poly
from raabe.exact_algebra import poly_definite_integral, poly_scale
from raabe.probes import (
    CapExceeded,
    SampledFunction,
    dense_approximate,
    from_polynomial,
    periodized,
    riemann_sum_lhs,
    scaling_limit_probe,
    simpson,
    theorem4_decompose,
)

B = bernoulli_poly


def lacunary_pow2(n, terms=60):
    # sum over powers of two of cos(2^(l+1) pi x) / 2^(l n)
    def f(x):
        x = np.asarray(x, dtype=float)
        return sum(np.cos(2.0 ** (l + 1) * np.pi * x) / 2.0 ** (l * n) for l in range(terms))
    return SampledFunction(f, f"f3[n={n}]", known_period=1.0, vectorized=True)


def add(f, g, label="sum"):
    return SampledFunction(lambda t: f(t) + g(t), label, vectorized=True)


class TestRiemannSum:
    def test_constant(self):
        one = SampledFunction(lambda t: 1.0, "one")
        assert riemann_sum_lhs(one, 3, 2, 0.3, 10) == 1.0

    def test_b2_on_unit_interval(self):
        val = riemann_sum_lhs(from_polynomial(B(2)), 2, 2, 0.0, 12)
        assert abs(val - float(poly_definite_integral(B(2), 0, 1))) <= 2.0**-12

    def test_b1_shifted(self):
        val = riemann_sum_lhs(from_polynomial(B(1)), 1, 3, 1.0, 8)
        assert abs(val - 1.0) <= 3.0**-8

    def test_cap(self):
        with pytest.raises(CapExceeded):
            riemann_sum_lhs(from_polynomial(B(1)), 1, 2, 0.0, 25)
        with pytest.raises(ValueError):
            riemann_sum_lhs(from_polynomial(B(1)), 1, 1, 0.0, 3)

    def test_scalar_and_vector_paths_agree(self):
        b = B(3)
        scalar = SampledFunction(lambda t: b.eval_float(t), "scalar")
        assert math.isclose(riemann_sum_lhs(scalar, 3, 3, 0.2, 5),
                            riemann_sum_lhs(from_polynomial(b), 3, 3, 0.2, 5), rel_tol=1e-13)

    @pytest.mark.parametrize("n", [1, 2, 3, 5])
    @pytest.mark.parametrize("a, ks", [(2, range(1, 13)), (3, range(1, 9))])
    def test_matches_scaled_value_for_bernoulli(self, n, a, ks):
        f = from_polynomial(B(n))
        x = F(37, 100)
        for k in ks:
            lhs = float(B(n)(a**k * x) / F(a) ** (k * n))
            rhs = riemann_sum_lhs(f, n, a, float(x), k)
            assert abs(lhs - rhs) <= 1e-10 * max(1.0, abs(lhs))


class TestScalingLimit:
    def test_b2(self):
        rep = scaling_limit_probe(from_polynomial(B(2)), 2, 2, 1, list(range(1, 13)))
        assert rep.expected == 1.0
        assert rep.success
        errors = [abs(v - 1.0) for _, v in rep.extras["table"]]
        assert errors == sorted(errors, reverse=True)

    def test_constant_n0(self):
        c = poly_scale(F(5, 2), B(0))
        rep = scaling_limit_probe(from_polynomial(c), 0, 2, 0.7, [1, 2, 3, 8])
        assert all(v == 2.5 for _, v in rep.extras["table"])
        assert rep.expected == 2.5 and rep.success

    def test_b1(self):
        rep = scaling_limit_probe(from_polynomial(B(1)), 1, 3, 2, list(range(1, 11)))
        assert rep.expected == 2.0
        assert rep.success and abs(rep.observed - 2.0) <= 3.0**-10

    def test_sigma_form_for_nonpolynomial(self):
        f = add(from_polynomial(poly_scale(3, B(2))), periodized(B(2)))
        rep = scaling_limit_probe(f, 2, 2, 1.0, list(range(1, 15)), sigma=3.0)
        assert rep.expected == 3.0
        assert abs(rep.observed - 3.0) < 1e-3


class TestDenseApproximate:
    def test_sqrt2(self):
        d = dense_approximate(math.sqrt(2), 2, 10)
        assert d.r == 1446 and d.value == F(1446, 1023)
        assert 0 <= d.error < F(1, 1023)

    @pytest.mark.parametrize("a, s", [(2, 1), (3, 4), (7, 2)])
    def test_zero(self, a, s):
        d = dense_approximate(0, a, s)
        assert d.r == 0 and d.value == 0 and d.error == 0

    def test_member_of_set(self):
        d = dense_approximate(F(5, 7), 2, 3)
        assert (d.r, d.value, d.error, d.boundary) == (5, F(5, 7), 0, False)

    def test_boundary_flag(self):
        d = dense_approximate(1 / 3, 2, 2)
        assert d.boundary and d.r == 0

    def test_window_random_draws(self):
        rng = random.Random(2024)
        for _ in range(1000):
            u = rng.uniform(-100, 100)
            a, s = rng.randint(2, 9), rng.randint(1, 12)
            d = dense_approximate(u, a, s)
            assert 0 <= d.error < F(1, a**s - 1)

    @given(st.fractions(min_value=-50, max_value=50), st.integers(2, 7), st.integers(1, 10))
    def test_window_exact_input(self, u, a, s):
        d = dense_approximate(u, a, s)
        assert 0 <= d.error < F(1, a**s - 1)
        assert d.value == F(d.r, a**s - 1)

    @given(st.floats(-10, 10, allow_nan=False), st.integers(2, 5), st.integers(1, 8))
    def test_error_shrinks(self, u, a, s):
        e0 = dense_approximate(u, a, s).error
        e3 = dense_approximate(u, a, s + 3).error
        if e0 > F(1, a ** (s + 3) - 1):
            assert e3 < e0


class TestDecompose:
    def test_three_b2_plus_periodic(self):
        f = add(from_polynomial(poly_scale(3, B(2))), periodized(B(2)))
        rep = theorem4_decompose(f, 2)
        assert abs(rep.observed - 3.0) <= 1e-6
        assert rep.extras["periodicity_defect"] <= 1e-6

    def test_b4(self):
        rep = theorem4_decompose(from_polynomial(B(4)), 4)
        assert abs(rep.observed - 1.0) <= 1e-9

    def test_pure_periodic(self):
        rep = theorem4_decompose(periodized(B(2)), 2)
        assert abs(rep.observed) <= 1e-12

    @pytest.mark.parametrize("lam", [0.0, 2.5, -1.0])
    @pytest.mark.parametrize("panels", [64, 256])
    def test_recovers_multiplier_with_fourier_part(self, lam, panels):
        poly = from_polynomial(poly_scale(F(lam), B(3)))
        rep = theorem4_decompose(add(poly, lacunary_pow2(3)), 3, panels)
        assert abs(rep.observed - lam) <= 10 * rep.bound

    def test_simpson_exact_for_cubics(self):
        assert simpson(from_polynomial(B(3)), 1.0, 2.0, 4) == pytest.approx(1.0, abs=1e-15)

    def test_validation(self):
        with pytest.raises(ValueError):
            theorem4_decompose(from_polynomial(B(2)), 0)


def test_b2_scaling_error_closed_form():
    # B_2(2^k)/4^k - 1 = -2^-k + 4^-k/6 exactly
    f = from_polynomial(bernoulli_poly(2))
    for k in (12, 13, 14):
        rep = scaling_limit_probe(f, 2, 2, 1, [k])
        assert rep.observed - 1 == pytest.approx(-(2.0**-k) + 4.0**-k / 6, rel=1e-9)
    assert abs(scaling_limit_probe(f, 2, 2, 1, [13]).observed - 1) > 1e-4
    assert abs(scaling_limit_probe(f, 2, 2, 1, [14]).observed - 1) <= 1e-4
