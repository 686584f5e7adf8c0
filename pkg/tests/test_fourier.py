import math
import random
from fractions import Fraction as F

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from raabe.bernoulli import bernoulli_poly
from raabe.fourier import (
    ConvergenceError,
    EnvelopeClass,
    ToleranceUnreachable,
    builtin_spec,
    coeff_residual_check,
    conjugate_bernoulli_eval,
    fourier_eval,
    log_sin_check,
    numeric_residual,
    partial_sum,
    periodized_bernoulli_eval,
    tail_bound,
)

NAMES = ["constant", "s2", "odd_part", "pow2_indicator", "conjugate_constant"]


def kahan_descending(terms):
    total, carry = 0.0, 0.0
    for t in reversed(terms):
        y = t - carry
        s = total + y
        carry = (s - total) - y
        total = s
    return total


def first_failure(seq, a, k_max):
    for k in range(1, k_max // a + 1):
        if seq(a * k) != seq(k):
            return k
    return None


def s2(k):
    return format(k, "b").count("1")


def odd(k):
    while k % 2 == 0:
        k //= 2
    return k


def pow2(k):
    return int(k == 2 ** (k.bit_length() - 1))


class TestBuiltinSpecs:
    def test_examples(self):
        assert builtin_spec("s2", 3).u(5) == 2
        mu = builtin_spec("pow2_indicator", 2)
        assert mu.u(8) == 1 and mu.u(12) == 0
        c = builtin_spec("constant", 2)
        assert all(c.u(k) == 1 and c.v(k) == 0 for k in range(1, 100))
        cc = builtin_spec("conjugate_constant", 2)
        assert cc.u(3) == 0 and cc.v(3) == 1

    def test_odd_part_needs_n3(self):
        with pytest.raises(ConvergenceError):
            builtin_spec("odd_part", 2)
        assert builtin_spec("odd_part", 3).envelope_class is EnvelopeClass.LINEAR

    def test_unknown(self):
        with pytest.raises(KeyError):
            builtin_spec("zeta", 2)

    @pytest.mark.parametrize("name", NAMES)
    def test_envelope_and_vector_weights(self, name):
        spec = builtin_spec(name, 3)
        ks = np.arange(1, 2**16 + 1, dtype=np.int64)
        u, v = spec.weights(ks)
        env = np.array([spec.envelope(int(k)) for k in ks])
        assert np.all(np.abs(u) <= env) and np.all(np.abs(v) <= env)
        for k in range(1, 3000):
            assert u[k - 1] == float(spec.u(k)) and v[k - 1] == float(spec.v(k))

    def test_sequences_match_brute_force(self):
        for k in range(1, 5000):
            assert builtin_spec("s2", 2).u(k) == s2(k)
            assert builtin_spec("odd_part", 3).u(k) == odd(k)
            assert builtin_spec("pow2_indicator", 2).u(k) == pow2(k)


class TestCoefficientCriterion:
    def test_examples(self):
        assert coeff_residual_check(builtin_spec("constant", 2), 7, 4096).is_zero
        assert coeff_residual_check(builtin_spec("s2", 3), 2, 4096).is_zero
        rep = coeff_residual_check(builtin_spec("s2", 3), 3, 4096)
        assert not rep.is_zero
        assert rep.witness["k"] == 1
        assert (rep.witness["value_at_ak"], rep.witness["value_at_k"]) == (2, 1)
        assert coeff_residual_check(builtin_spec("odd_part", 3), 2, 4096).is_zero

    def test_preconditions(self):
        with pytest.raises(ValueError):
            coeff_residual_check(builtin_spec("s2", 2), 1, 100)
        with pytest.raises(ValueError):
            coeff_residual_check(builtin_spec("s2", 2), 5, 4)

    @pytest.mark.parametrize("name, seq", [("s2", s2), ("odd_part", odd), ("pow2_indicator", pow2)])
    @pytest.mark.parametrize("a", range(2, 13))
    def test_witness_is_brute_force_first_failure(self, name, seq, a):
        rep = coeff_residual_check(builtin_spec(name, 3), a, 2048)
        expected = first_failure(seq, a, 2048)
        assert rep.is_zero == (expected is None)
        if expected is not None:
            assert rep.witness["k"] == expected

    @pytest.mark.parametrize("name", NAMES)
    def test_composition_of_moduli(self, name):
        spec = builtin_spec(name, 3)
        k_max = 1200
        for a in range(2, 7):
            for b in range(2, 7):
                if coeff_residual_check(spec, a, k_max).is_zero and coeff_residual_check(spec, b, k_max).is_zero:
                    assert coeff_residual_check(spec, a * b, k_max // max(a, b)).is_zero

    @pytest.mark.parametrize("name", NAMES)
    def test_all_moduli_forces_constant(self, name):
        spec = builtin_spec(name, 3)
        K = 40
        if all(coeff_residual_check(spec, a, K).is_zero for a in range(2, K + 1)):
            assert all(spec.u(k) == spec.u(1) and spec.v(k) == spec.v(1) for k in range(1, K + 1))
        else:
            assert name in ("s2", "odd_part", "pow2_indicator")


class TestFourierEval:
    def test_zeta2(self):
        r = fourier_eval(builtin_spec("constant", 2), 0, 1e-6)
        assert r.tail_bound <= 1e-6
        assert abs(r.value - float(mpmath.zeta(2))) <= 1e-6 + 1e-12

    def test_alternating_zeta2(self):
        r = fourier_eval(builtin_spec("constant", 2), 0.5, 1e-6)
        assert abs(r.value + float(mpmath.pi**2 / 12)) <= 1e-6 + 1e-12

    @given(st.sampled_from(NAMES[:2] + NAMES[3:]),
           st.fractions(min_value=0, max_value=1, max_denominator=64),
           st.integers(-5, 5))
    @settings(max_examples=30, deadline=None)
    def test_periodic_bit_identical(self, name, x, m):
        spec = builtin_spec(name, 3)
        assert fourier_eval(spec, x, 1e-7) == fourier_eval(spec, x + m, 1e-7)

    def test_periodic_float_inputs(self):
        # only inputs where x + 3 is exact keep the same fractional part
        spec = builtin_spec("s2", 3)
        for x in (0.125, 0.3125, 0.71875):
            assert fourier_eval(spec, x, 1e-5).value == fourier_eval(spec, x + 3, 1e-5).value

    @pytest.mark.parametrize("name, n", [("s2", 2), ("s2", 3), ("odd_part", 3),
                                         ("pow2_indicator", 2), ("constant", 3)])
    def test_tail_bound_dominates_long_sum(self, name, n):
        spec = builtin_spec(name, n)
        rng = random.Random(7)
        for _ in range(4):
            x = rng.random()
            r = fourier_eval(spec, x, 1e-4)
            M = 400_000
            ref = partial_sum(spec, x, M)
            assert abs(r.value - ref) <= 1e-4 + tail_bound(spec, x, M) + 1e-12

    @pytest.mark.parametrize("n", [2, 3, 4])
    def test_log_envelope_bound_dominates_envelope_tail(self, n):
        spec = builtin_spec("s2", n)
        M = 2_000_000
        ks = np.arange(1, M + 1, dtype=float)
        terms = 2.0 * (1.0 + np.log2(ks)) / ks**n
        suffix = np.cumsum(terms[::-1])[::-1]
        for N in (1, 2, 5, 50, 1000):
            assert suffix[N] <= tail_bound(spec, 0, N)

    def test_least_truncation(self):
        spec = builtin_spec("constant", 3)
        r = fourier_eval(spec, 0, 1e-6)
        assert tail_bound(spec, 0, r.truncation_N) <= 1e-6 < tail_bound(spec, 0, r.truncation_N - 1)

    def test_margin_rules(self):
        with pytest.raises(ConvergenceError):
            fourier_eval(builtin_spec("s2", 1), 0.3, 1e-3)
        with pytest.raises(ConvergenceError):
            fourier_eval(builtin_spec("constant", 1), 2, 1e-3)
        r = fourier_eval(builtin_spec("constant", 1), F(1, 2), 1e-4)
        assert abs(r.value + math.log(2)) <= 1e-4

    def test_tolerance_unreachable(self):
        with pytest.raises(ToleranceUnreachable) as info:
            fourier_eval(builtin_spec("constant", 2), 0, 1e-6, cap=10**4)
        assert info.value.required is not None and info.value.required > 10**4
        with pytest.raises(ValueError):
            fourier_eval(builtin_spec("constant", 2), 0, 0.0)


class TestBernoulliSeries:
    def test_n2_at_zero(self):
        r = periodized_bernoulli_eval(2, 0, 1e-8, cap=2 * 10**7)
        assert abs(r.value - 1 / 6) <= 1e-8 + 1e-12

    def test_n2_at_zero_exceeds_default_cap(self):
        with pytest.raises(ToleranceUnreachable):
            periodized_bernoulli_eval(2, 0, 1e-8)

    def test_n4_half(self):
        r = periodized_bernoulli_eval(4, F(1, 2), 1e-8)
        assert abs(r.value - float(bernoulli_poly(4)(F(1, 2)))) <= 1e-8 + 1e-12

    def test_n3_shifted(self):
        r = periodized_bernoulli_eval(3, F(7, 3), 1e-8)
        assert abs(r.value - float(bernoulli_poly(3)(F(1, 3)))) <= 1e-8 + 1e-12

    @pytest.mark.parametrize("n, tol", [(1, 1e-5), (2, 1e-7), (3, 1e-7), (5, 1e-9), (8, 1e-10)])
    def test_grid(self, n, tol):
        b = bernoulli_poly(n)
        for j in range(1, 40):
            x = F(j, 40)
            r = periodized_bernoulli_eval(n, x, tol)
            assert abs(r.value - float(b(x))) <= tol + 1e-12

    def test_excluded_point(self):
        with pytest.raises(ValueError):
            periodized_bernoulli_eval(1, 3, 1e-6)
        with pytest.raises(ValueError):
            conjugate_bernoulli_eval(1, 0.0, 1e-6)

    def test_conjugate_n1_half(self):
        r = conjugate_bernoulli_eval(1, F(1, 2), 1e-8, cap=4 * 10**7)
        assert abs(r.value + math.log(2) / math.pi) <= 1e-8 + 1e-12

    def test_conjugate_n2_zero(self):
        assert conjugate_bernoulli_eval(2, 0, 1e-8).value == 0.0

    def test_conjugate_n2_quarter(self):
        r = conjugate_bernoulli_eval(2, F(1, 4), 1e-8)
        n, x, M = 2, 0.25, 200_000
        w = -2 * math.factorial(n) / (2 * math.pi) ** n
        direct = w * kahan_descending([math.sin(2 * math.pi * k * x - n * math.pi / 2) / k**n
                                       for k in range(1, M + 1)])
        assert abs(r.value - direct) <= 1e-8 + abs(w) / (math.sin(math.pi * x) * (M + 1) ** 2) + 1e-12
        # closed form: Catalan's constant over pi^2
        assert abs(r.value - float(mpmath.catalan / mpmath.pi**2)) <= 1e-8 + 1e-12

    @pytest.mark.parametrize("n", [2, 3, 4])
    def test_conjugate_against_direct_sum(self, n):
        rng = random.Random(n)
        w = -2 * math.factorial(n) / (2 * math.pi) ** n
        for _ in range(5):
            x = rng.random()
            r = conjugate_bernoulli_eval(n, x, 1e-6)
            M = 50_000
            direct = w * kahan_descending([math.sin(2 * math.pi * k * x - n * math.pi / 2) / k**n
                                           for k in range(1, M + 1)])
            assert abs(r.value - direct) <= 1e-6 + abs(w) / ((n - 1) * M ** (n - 1)) + 1e-12


class TestLogSin:
    @pytest.mark.parametrize("x, expected", [
        (F(1, 2), math.log(2)),
        (F(1, 6), 0.0),
        (F(1, 3), 0.5 * math.log(3)),
    ])
    def test_examples(self, x, expected):
        rep = log_sin_check(x, 1e-5)
        assert rep.is_zero
        assert abs(rep.params["direct"] - expected) < 1e-15
        assert abs(rep.params["series"] - expected) < 1e-5

    def test_rejects_integers(self):
        with pytest.raises(ValueError):
            log_sin_check(2, 1e-5)

    def test_reports_failure_with_witness(self):
        rep = log_sin_check(F(1, 3), 1e-5, terms=10)
        assert not rep.is_zero and rep.witness["discrepancy"] > 1e-5


class TestNumericResidual:
    def test_solutions_pass(self):
        rng = random.Random(1)
        xs = [rng.random() for _ in range(64)]
        for name, n, a in [("s2", 3, 2), ("pow2_indicator", 3, 4), ("constant", 2, 5), ("odd_part", 4, 2)]:
            rep = numeric_residual(builtin_spec(name, n), a, xs, 1e-6)
            assert rep.is_zero, (name, rep.witness)

    def test_non_solution_fails(self):
        rng = random.Random(2)
        xs = [rng.random() for _ in range(16)]
        rep = numeric_residual(builtin_spec("s2", 3), 3, xs, 1e-6)
        assert not rep.is_zero
