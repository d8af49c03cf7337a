import cmath
from fractions import Fraction

import pytest

from oracles import a_numeric, b_constant_term_numeric, b_numeric, c_numeric, theta_quotient_a, theta_ratio_c
from tjfcalc.jacobi import (
    A_SLOPE,
    JacobiForm,
    TailBoundViolated,
    evaluate,
    gen_a,
    gen_b,
    gen_c,
    jf_mul,
    numeric_covariance_check,
    restrict_z0,
    scale_z,
)
from tjfcalc.modular import mf_generator
from tjfcalc.series import QYSeries, YLaurent

H = Fraction(1, 2)


def y_row(phi, e):
    row = phi.series.y_coefficient(e)
    return {r: row.coefficient(r).to_rational() for r in row.support()}


def as_poly(series):
    return {(int(e), int(2 * r)): c.to_rational() for e, r, c in series.items()}


class TestGeneratorA:
    def test_leading_factor(self):
        assert y_row(gen_a(3), 0) == {-H: -1, H: 1}

    def test_first_order(self):
        assert y_row(gen_a(3), 1) == {Fraction(-3, 2): 1, -H: -3, H: 3, Fraction(3, 2): -1}

    def test_against_product_oracle(self):
        assert as_poly(gen_a(15).series) == theta_quotient_a(15)

    def test_grading_and_integrality(self):
        a = gen_a(10)
        assert (a.k, a.degree, a.weight, a.index) == (1, 0, -1, H)
        assert a.series.is_integral()

    def test_slope_certificate(self):
        a = gen_a(20)
        assert a.series.slope == A_SLOPE and a.series.satisfies_slope()

    def test_vanishes_at_origin(self):
        assert restrict_z0(gen_a(10)).series.is_zero()
        assert restrict_z0(gen_a(10)).degree == -2


class TestGeneratorB:
    def test_constant_term(self):
        assert y_row(gen_b(5), 0) == {-1: 1, 0: 10, 1: 1}

    def test_constant_term_numeric_oracle(self):
        for z in (0.1, 0.23 + 0.05j, 0.4 - 0.02j):
            y = cmath.exp(2j * cmath.pi * z)
            num = complex(b_constant_term_numeric(z))
            assert abs(num - (y + 10 + 1 / y)) < 1e-6

    def test_full_series_numeric_oracle(self):
        b = gen_b(40)
        for tau, z in ((1j, 0.1 + 0.05j), (0.2 + 1.3j, 0.31)):
            assert abs(evaluate(b.series, tau, z) - complex(b_numeric(z, tau))) < 1e-6

    def test_restricts_to_twelve(self):
        r = restrict_z0(gen_b(10))
        assert r.degree == 0 and r.series == QYSeries.monomial(0, 0, 12)

    def test_integral_with_integer_y_support(self):
        b = gen_b(12)
        assert b.series.is_integral()
        assert all(r.denominator == 1 for _, r, _ in b.series.items())
        assert (b.k, b.degree) == (2, 4)


class TestGeneratorC:
    def test_constant_term(self):
        assert y_row(gen_c(3), 0) == {-H: 1, H: 1}

    def test_against_product_oracle(self):
        assert as_poly(gen_c(15).series) == theta_ratio_c(15)

    def test_numeric_oracle(self):
        tau, z = 1.1j, 0.17 + 0.03j
        assert abs(evaluate(gen_c(40).series, tau, z) - complex(c_numeric(z, tau))) < 1e-8

    def test_restricts_to_two(self):
        r = restrict_z0(gen_c(10))
        assert r.degree == 0 and r.series == QYSeries.monomial(0, 0, 2)

    def test_duplication_identity(self):
        a, c = gen_a(30), gen_c(30)
        lhs, rhs = a * c, scale_z(a, 2)
        assert lhs.series == rhs.series
        assert lhs.series.trunc == rhs.series.trunc == 30
        assert (lhs.k, lhs.degree) == (rhs.k, rhs.degree) == (4, 6)

    def test_numeric_a_matches_series(self):
        tau, z = 1.2j, 0.3 + 0.1j
        assert abs(evaluate(gen_a(30).series, tau, z) - complex(a_numeric(z, tau))) < 1e-8


class TestRingOperations:
    def test_a_squared_grading(self):
        p = jf_mul(gen_a(5), gen_a(5))
        assert (p.k, p.degree) == (2, 0)

    def test_a_times_c_grading(self):
        p = gen_a(5) * gen_c(5)
        assert (p.k, p.degree) == (4, 6)

    def test_b_squared_constant_term(self):
        bb = gen_b(5) * gen_b(5)
        want = YLaurent.from_dict({-1: 1, 0: 10, 1: 1}) * YLaurent.from_dict({-1: 1, 0: 10, 1: 1})
        assert (bb.k, bb.degree) == (4, 8)
        assert bb.series.y_coefficient(0) == want

    def test_restriction_is_multiplicative(self):
        b, c = gen_b(10), gen_c(10)
        assert restrict_z0(b * c).series == (restrict_z0(b) * restrict_z0(c)).series
        assert restrict_z0(b * c).degree == (b * c).degree - 2 * (b * c).k

    def test_restriction_of_a_squared(self):
        assert restrict_z0(gen_a(8) ** 2).series.is_zero()

    def test_products_are_integral(self):
        a, b, c = gen_a(8), gen_b(8), gen_c(8)
        assert all(p.series.is_integral() for p in (a * b, b * c, a * a * c, b**3))

    def test_modular_scalar(self):
        p = gen_a(6) * mf_generator("c4", 6)
        assert (p.k, p.degree) == (1, 8)

    def test_add_requires_bidegree(self):
        with pytest.raises(ValueError):
            gen_a(4) + gen_b(4)

    def test_parity_of_y_support(self):
        with pytest.raises(ValueError):
            JacobiForm(QYSeries.monomial(0, 1), 1, 0)

    def test_json_round_trip(self):
        c = gen_c(6)
        again = JacobiForm.from_json_obj(c.to_json_obj())
        assert again == c


class TestScaleZ:
    def test_identity(self):
        a = gen_a(6)
        assert scale_z(a, 1) == a

    def test_double(self):
        s = scale_z(gen_a(6), 2)
        assert (s.k, s.degree) == (4, 6)
        assert y_row(s, 0) == {-1: -1, 1: 1}

    def test_triple_grading(self):
        s = scale_z(gen_a(6), 3)
        assert (s.k, s.degree) == (9, 16)

    def test_weight_preserved(self):
        for phi in (gen_a(4), gen_b(4), gen_c(4)):
            for n in (2, 3, 5):
                assert scale_z(phi, n).weight == phi.weight

    def test_composition(self):
        b = gen_b(6)
        assert scale_z(scale_z(b, 2), 3) == scale_z(b, 6)

    def test_slope_scales(self):
        s = scale_z(gen_a(6), 3).series
        assert s.slope == (3 * A_SLOPE[0], 3 * A_SLOPE[1])


class TestCovariance:
    @pytest.mark.parametrize("name", ["a", "b", "c"])
    def test_s_transformation(self, name):
        phi = {"a": gen_a, "b": gen_b, "c": gen_c}[name](40)
        res = numeric_covariance_check(phi, (0, -1, 1, 0), (0, 0), (2j, 0.1 + 0.05j), 1e-6)
        assert res.passed, res

    @pytest.mark.parametrize("name", ["a", "b", "c"])
    @pytest.mark.parametrize("shift", [(1, 0), (0, 1), (1, 1)])
    def test_elliptic_shift(self, name, shift):
        phi = {"a": gen_a, "b": gen_b, "c": gen_c}[name](40)
        res = numeric_covariance_check(phi, (1, 0, 0, 1), shift, (2j, 0.1 + 0.05j), 1e-6)
        assert res.passed, res

    def test_identity_has_zero_residual(self):
        res = numeric_covariance_check(gen_b(20))
        assert res.residual == 0

    def test_a_shift_at_other_point(self):
        res = numeric_covariance_check(gen_a(40), (1, 0, 0, 1), (1, 0), (3j, 0.2 + 0.1j), 1e-6)
        assert res.passed

    def test_c_s_transformation_loose(self):
        res = numeric_covariance_check(gen_c(40), (0, -1, 1, 0), (0, 0), (2j, 0.1j), 1e-4)
        assert res.passed

    def test_wrong_weight_fails(self):
        a = gen_a(40)
        fake = JacobiForm(a.series, a.k, a.degree + 2)
        res = numeric_covariance_check(fake, (0, -1, 1, 0), (0, 0), (2j, 0.1 + 0.05j), 1e-6)
        assert not res.passed

    def test_tail_bound_enforced(self):
        with pytest.raises(TailBoundViolated):
            numeric_covariance_check(gen_c(3), (0, -1, 1, 0), (0, 0), (1.1j, 0.1), 1e-9)

    def test_bad_gamma(self):
        with pytest.raises(ValueError):
            numeric_covariance_check(gen_a(10), (1, 1, 1, 1))
