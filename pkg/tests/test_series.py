import json
from fractions import Fraction

import pytest

from tjfcalc.cyclotomic import CycScalar, totient
from tjfcalc.jacobi import gen_a, gen_c
from tjfcalc.modular import mf_generator
from tjfcalc.series import (
    INF,
    BeyondTruncation,
    NoSlopeCertificate,
    NotDivisible,
    QYSeries,
    YLaurent,
    eval_y1,
    scalar_reduce,
    series_add,
    series_div_exact,
    series_mul,
    substitute_y,
)

Q = QYSeries.monomial


class TestCycScalar:
    def test_zeta4_squared(self):
        z = CycScalar.zeta(4)
        assert z * z == CycScalar.rational(-1, 4)

    def test_phi3_relation(self):
        z = CycScalar.zeta(3)
        assert (z * z + z + 1).is_zero()

    def test_norm_of_one_plus_zeta3(self):
        z = CycScalar.zeta(3)
        assert (1 + z) * (1 + z * z) == CycScalar.rational(1, 3)

    def test_vector_length_is_totient(self):
        for n in (1, 2, 3, 4, 5, 6, 8, 12):
            assert len(CycScalar.zeta(n).coeffs) == totient(n)

    def test_scalar_reduce_canonical(self):
        # zeta_6^3 = -1 written as the raw polynomial x^3
        assert scalar_reduce([0, 0, 0, 1], 6) == CycScalar.rational(-1, 6)

    def test_mixed_orders_embed(self):
        s = CycScalar.zeta(4) + CycScalar.zeta(3)
        assert s.order == 12

    def test_inverse(self):
        z = 1 + CycScalar.zeta(5)
        assert z * z.inverse() == CycScalar.rational(1, 5)

    def test_rational_case(self):
        x = CycScalar.rational(Fraction(3, 4))
        assert x.is_rational() and x.to_rational() == Fraction(3, 4)


class TestSeriesAdd:
    def test_additive_identity(self):
        f = Q(-1, 0) + Q(2, 1, 3)
        assert series_add(f, QYSeries.zero()).identical(f)

    def test_cancellation_drops_terms(self):
        f = series_add(series_add(Q(-1, 0), Q(0, 0)), Q(-1, 0, -1))
        assert f.terms == {0: {0: (1,)}}

    def test_truncation_min_rule(self):
        f = Q(0, 0, trunc=10)
        g = Q(1, 0, trunc=6)
        assert series_add(f, g).trunc == 6

    def test_denominator_lcm(self):
        f = series_add(Q(Fraction(1, 2), 0), Q(Fraction(1, 3), 0))
        assert f.qden == 6

    def test_slope_rule_is_max(self):
        f = Q(0, 0).with_slope((Fraction(1, 2), 1))
        g = Q(0, 0).with_slope((Fraction(1, 3), 2))
        assert series_add(f, g).slope == (Fraction(1, 2), 2)

    def test_integer_inputs_stay_integral(self):
        assert series_add(Q(0, 1, 3), Q(1, 0, -4)).is_integral()


class TestSeriesMul:
    def test_multiplicative_identity(self):
        f = Q(-1, Fraction(1, 2)) + Q(3, 0, 5)
        assert series_mul(f, QYSeries.one()) == f

    def test_square_of_leading_factor(self):
        f = Q(0, Fraction(1, 2)) - Q(0, Fraction(-1, 2))
        assert series_mul(f, f).terms == {0: {-2: (1,), 0: (-2,), 2: (1,)}}

    def test_half_powers_reduce_denominator(self):
        h = Q(Fraction(1, 2), 0)
        p = series_mul(h, h)
        assert p.qden == 1 and p.terms == {1: {0: (1,)}}

    def test_truncation_rule(self):
        # T = min(T_f + v_g, T_g + v_f)
        f = Q(2, 0, trunc=10) + Q(3, 0)
        g = Q(-1, 0, trunc=6) + Q(0, 0)
        assert series_mul(f, g).trunc == min(10 - 1, 6 + 2)

    def test_cyclotomic_coefficients(self):
        f = Q(0, 0, CycScalar.zeta(4))
        assert series_mul(f, f).coefficient(0, 0) == CycScalar.rational(-1, 4)

    def test_slope_sum_rule_is_sound(self):
        a = gen_a(8).series
        p = series_mul(a, a)
        assert p.satisfies_slope()


class TestSeriesDivExact:
    def test_c_by_long_division(self):
        a = gen_a(10).series
        c = series_div_exact(a.map_y(2), a)
        assert c.y_coefficient(0) == YLaurent.from_dict({Fraction(1, 2): 1, Fraction(-1, 2): 1})
        assert eval_y1(c).coefficient(0, 0) == 2

    def test_self_division(self):
        f = Q(-1, 1) + Q(0, 0, 5) + Q(2, -1, 3)
        assert series_div_exact(f, f) == QYSeries.one()

    def test_unit_leading_coefficient_always_divides(self):
        # (1 + q y) / (1 + q) exists because the leading coefficient 1 is a unit
        f = Q(0, 0) + Q(1, 1)
        g = Q(0, 0) + Q(1, 0)
        h = series_div_exact(f.truncate(8), g.truncate(8))
        assert series_mul(h, g).truncate(h.trunc) == f.truncate(h.trunc)

    def test_not_divisible_reports_exponent(self):
        # 1 / (y - 1) is not a Laurent polynomial in y
        f = Q(0, 0, trunc=5)
        g = Q(0, 1, trunc=5) - Q(0, 0)
        with pytest.raises(NotDivisible) as err:
            series_div_exact(f, g)
        assert err.value.q_exponent == 0

    def test_division_by_zero(self):
        with pytest.raises(ZeroDivisionError):
            series_div_exact(Q(0, 0), QYSeries.zero())


class TestSubstituteY:
    def test_a_at_y_equal_one_vanishes(self):
        a = gen_a(10).series
        assert substitute_y(a, 0, 0, 1).is_zero()

    def test_a_at_half_period(self):
        a = gen_a(10).series
        s = substitute_y(a, 1, 0, 2)
        assert s.order == 4
        assert s.coefficient(0, 0) == CycScalar.zeta(4) * 2

    def test_c_at_origin(self):
        c = gen_c(10).series
        s = substitute_y(c, 0, 0, 1)
        assert s.coefficient(0, 0) == 2 and s.coefficient(1, 0) == 0

    def test_n_one_matches_termwise_evaluation(self):
        c = gen_c(10).series
        assert substitute_y(c, 0, 0, 1) == eval_y1(c)

    def test_needs_slope_for_fractional_shift(self):
        f = QYSeries(gen_a(6).series.terms, trunc=6)
        with pytest.raises(NoSlopeCertificate):
            substitute_y(f, 0, 1, 2)

    def test_sound_truncation_bound(self):
        a = gen_a(12).series
        sigma, r0 = a.slope
        s = substitute_y(a, 0, 1, 2)
        assert s.trunc == int(12 * (1 - sigma / 2) - r0 / 2)

    def test_truncated_agrees_with_deeper_expansion(self):
        shallow = substitute_y(gen_a(10).series, 1, 1, 2)
        deep = substitute_y(gen_a(20).series, 1, 1, 2)
        assert shallow == deep.truncate(shallow.trunc)

    def test_output_has_trivial_y(self):
        assert substitute_y(gen_a(8).series, 1, -1, 3).has_trivial_y()


class TestCoefficient:
    def test_delta_leading(self):
        assert mf_generator("delta", 5).series.coefficient(1, 0) == 1

    def test_a_leading(self):
        a = gen_a(5).series
        assert a.coefficient(0, Fraction(1, 2)) == 1
        assert a.coefficient(0, Fraction(3, 2)) == 0

    def test_beyond_truncation(self):
        with pytest.raises(BeyondTruncation):
            gen_a(5).series.coefficient(5, Fraction(1, 2))


class TestJson:
    def test_round_trip_bit_exact(self):
        s = gen_c(6).series
        text = s.to_json()
        again = QYSeries.from_json(text)
        assert again.identical(s) and again.to_json() == text

    def test_cyclotomic_round_trip(self):
        s = substitute_y(gen_a(6).series, 1, 1, 3)
        assert QYSeries.from_json(s.to_json()).identical(s)

    def test_schema(self):
        obj = json.loads(Q(Fraction(1, 2), Fraction(-1, 2), Fraction(3, 4), trunc=4).to_json())
        assert obj["cyclotomic_order"] == 1
        assert obj["q_denominator"] == 2
        assert obj["terms"] == [[1, [[-1, ["3/4"]]]]]
        assert obj["slope"] == ["0/1", "1/2"]

    def test_exact_series_serializes_infinite_truncation(self):
        s = QYSeries.one()
        assert s.trunc == INF
        assert QYSeries.from_json(s.to_json()).identical(s)
