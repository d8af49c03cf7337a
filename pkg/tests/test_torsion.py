import pytest

from oracles import a_numeric, b_numeric, c_numeric, torsion_sum_numeric
from tjfcalc.jacobi import (
    FractionalResidue,
    TorsionRestriction,
    TwistNotTrivialized,
    gen_a,
    gen_b,
    gen_c,
    restrict_z0,
    scale_z,
    torsion_restrict,
    torsion_sum,
)
from tjfcalc.series import QYSeries, substitute_y

T = 10


@pytest.fixture(scope="module")
def gens():
    return gen_a(T), gen_b(T), gen_c(T)


class TestRestriction:
    def test_component_count_and_keys(self, gens):
        a, _, _ = gens
        for n in (1, 2, 3):
            r = torsion_restrict(scale_z(a, n), n)
            assert sorted(r.components) == [(x, y) for x in range(n) for y in range(n)]

    def test_cusp_component_integral_exponents(self, gens):
        a, b, _ = gens
        r = torsion_restrict(a * a * b, 2)
        assert r.components[(0, 0)].qden == 1

    def test_a4_components(self, gens):
        a, _, _ = gens
        r = torsion_restrict(a**4, 2)
        assert r.components[(0, 0)].is_zero()
        assert r.components[(0, 1)].coefficient(0, 0) == 16
        assert r.degree == -8

    def test_raw_matches_substitution(self, gens):
        a, b, _ = gens
        r = torsion_restrict(a * b, 2, normalized=False)
        assert r.components[(1, 1)] == substitute_y((a * b).series, 1, 1, 2)
        assert not r.normalized

    def test_normalization_requires_square_index(self, gens):
        a, _, _ = gens
        with pytest.raises(TwistNotTrivialized):
            torsion_restrict(a, 2)

    def test_components_land_in_cyclotomic_integers(self, gens):
        a, b, c = gens
        for phi, n in ((a**4, 2), (b * b, 2), (a * c, 2), (a * b, 3), (a**4 * b, 3)):
            for comp in torsion_restrict(phi, n, normalized=phi.k == n * n).components.values():
                assert comp.is_integral()

    def test_json_keys(self, gens):
        a, _, _ = gens
        obj = torsion_restrict(a**4, 2).to_json_obj()
        assert sorted(obj["components"]) == ["0,0", "0,1", "1,0", "1,1"]


class TestCompositeNull:
    @pytest.mark.parametrize("n", [2, 3])
    @pytest.mark.parametrize("psi", ["1", "a", "b", "a^2"])
    def test_vanishes(self, gens, n, psi):
        a, b, _ = gens
        factor = {"1": None, "a": a, "b": b, "a^2": a * a}[psi]
        phi = scale_z(a, n) if factor is None else scale_z(a, n) * factor
        r = torsion_restrict(phi, n, normalized=phi.k == n * n)
        assert r.is_zero()
        assert len(r.components) == n * n


# values of the normalized fiberwise sums, checked against the theta-function oracle below
SUMS = {"a^4": 0, "a^2 b": 0, "b^2": 288, "a c": 0}


def _form(expr, a, b, c):
    return {"a^4": a**4, "a^2 b": a * a * b, "b^2": b * b, "a c": a * c}[expr]


class TestFiberwiseSum:
    @pytest.mark.parametrize("expr", sorted(SUMS))
    def test_membership_and_integrality(self, expr):
        a, b, c = gen_a(12), gen_b(12), gen_c(12)
        s = torsion_sum(torsion_restrict(_form(expr, a, b, c), 2), 2)
        assert s.membership.in_span and s.membership.integral
        assert s.total.is_integral() and s.integral_all_components and s.integral_cusp_component
        coords = {k: v for k, v in s.membership.rational_coordinates().items() if v}
        assert coords == ({(0, 0, 0): SUMS[expr]} if SUMS[expr] else {})

    @pytest.mark.parametrize("expr", sorted(SUMS))
    def test_frozen_values_match_numeric_oracle(self, expr):
        funcs = {
            "a^4": lambda z, t: a_numeric(z, t) ** 4,
            "a^2 b": lambda z, t: a_numeric(z, t) ** 2 * b_numeric(z, t),
            "b^2": lambda z, t: b_numeric(z, t) ** 2,
            "a c": lambda z, t: a_numeric(z, t) * c_numeric(z, t),
        }
        for tau in (1j, 0.3 + 1.1j):
            assert abs(complex(torsion_sum_numeric(funcs[expr], 4, 2, tau)) - SUMS[expr]) < 1e-9

    def test_degrees(self, gens):
        a, b, c = gens
        assert torsion_restrict(a**4, 2).degree == -8
        assert torsion_restrict(a * c, 2).degree == -2

    def test_n_one_is_restriction_to_origin(self, gens):
        a, _, _ = gens
        s = torsion_sum(torsion_restrict(a, 1), 1)
        assert s.total == restrict_z0(a).series

    def test_zero_restriction(self):
        zero = QYSeries.zero(trunc=6)
        r = TorsionRestriction(2, 0, {(x, y): zero for x in range(2) for y in range(2)})
        s = torsion_sum(r, 1)
        assert s.membership.in_span
        assert all(v == 0 for v in s.membership.rational_coordinates().values())

    def test_raw_mode_cannot_be_summed(self, gens):
        a, _, _ = gens
        with pytest.raises(ValueError):
            torsion_sum(torsion_restrict(a, 2, normalized=False), 1)

    def test_fractional_residue_surfaces(self):
        half = QYSeries.monomial(0.5, 0, trunc=4)
        zero = QYSeries.zero(trunc=4)
        r = TorsionRestriction(2, 0, {(0, 0): zero, (0, 1): zero, (1, 0): half, (1, 1): zero})
        with pytest.raises(FractionalResidue):
            torsion_sum(r, 1)

    def test_n_three_untwisted(self, gens):
        a, _, _ = gens
        s = torsion_sum(torsion_restrict(scale_z(a, 3), 3), 1)
        assert s.total.is_zero()
