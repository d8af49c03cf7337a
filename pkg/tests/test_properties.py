from fractions import Fraction

from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from tjfcalc.cells import AttachLabel, CellComplex, direct_sum, dual, shift, simplify
from tjfcalc.cyclotomic import CycScalar, totient
from tjfcalc.jacobi import JacobiForm
from tjfcalc.series import QYSeries, series_add, series_mul, substitute_y

CASES = settings(max_examples=1000, deadline=None, suppress_health_check=[HealthCheck.too_slow])

orders = st.sampled_from([1, 3, 4, 6])
exponents = st.builds(Fraction, st.integers(-2, 6), st.sampled_from([1, 2]))
y_exponents = st.builds(Fraction, st.integers(-4, 4), st.just(2))
truncations = st.builds(Fraction, st.integers(-1, 12), st.sampled_from([1, 2]))


@st.composite
def exact_series(draw, order):
    data = {}
    for _ in range(draw(st.integers(0, 5))):
        coeffs = draw(st.lists(st.integers(-5, 5), min_size=totient(order), max_size=totient(order)))
        data[(draw(exponents), draw(y_exponents))] = CycScalar(order, tuple(coeffs))
    return QYSeries.from_terms(data, order=order)


@st.composite
def series_triples(draw):
    order = draw(orders)
    return [draw(exact_series(order)).truncate(draw(truncations)) for _ in range(3)]


@st.composite
def exact_pairs(draw):
    order = draw(orders)
    return draw(exact_series(order)), draw(exact_series(order))


def agree(a, b):
    return a.trunc == b.trunc and a == b


def tight_slope(s):
    sigma = Fraction(1, 2)
    return sigma, max([Fraction(0)] + [abs(r) - sigma * e for e, r, _ in s.items()])


class TestRingAxioms:
    @CASES
    @given(series_triples())
    def test_commutative_ring(self, fgh):
        f, g, h = fgh
        assert series_mul(f, g) == series_mul(g, f)
        assert series_mul(series_mul(f, g), h) == series_mul(f, series_mul(g, h))
        assert series_mul(f, series_add(g, h)) == series_add(series_mul(f, g), series_mul(f, h))
        assert series_add(series_add(f, g), h) == series_add(f, series_add(g, h))
        assert series_mul(f, QYSeries.one(order=f.order)) == f
        assert series_add(f, f.scale(-1)).is_zero()


class TestTruncationSoundness:
    @CASES
    @given(exact_pairs(), truncations, truncations)
    def test_operations_commute_with_truncation(self, pair, s, t):
        F, G = pair
        f, g = F.truncate(s), G.truncate(t)
        prod, tot = series_mul(f, g), series_add(f, g)
        assert agree(prod, series_mul(F, G).truncate(prod.trunc))
        assert agree(tot, series_add(F, G).truncate(tot.trunc))


class TestSlopeSoundness:
    @CASES
    @given(exact_pairs(), st.sampled_from([2, 3]), st.integers(-2, 2), st.integers(0, 2), st.integers(1, 10))
    def test_certificates_survive_and_substitution_is_sound(self, pair, n, alpha, beta, cut):
        F, G = (s.with_slope(tight_slope(s)) for s in pair)
        assert series_mul(F, G).satisfies_slope()
        assert series_add(F, G).satisfies_slope()
        alpha, beta = max(1 - n, min(alpha, n - 1)), beta % n
        shallow = substitute_y(F.truncate(cut), beta, alpha, n)
        assert agree(shallow, substitute_y(F, beta, alpha, n).truncate(shallow.trunc))


@st.composite
def complexes(draw):
    n = draw(st.integers(1, 6))
    degs = draw(st.lists(st.integers(-8, 8), min_size=n, max_size=n))
    cells = [(f"c{i}", d) for i, d in enumerate(degs)]
    atts = []
    for s, ds in cells:
        for t, dt in cells:
            fits = [l for l in AttachLabel if l.stem == ds - dt - 1]
            if ds > dt and fits and draw(st.booleans()):
                atts.append((s, t, draw(st.sampled_from(fits))))
    return CellComplex(tuple(cells), tuple(atts))


class TestDualInvolution:
    @CASES
    @given(complexes(), complexes(), st.integers(-10, 10))
    def test_duality(self, x, y, k):
        assert dual(dual(x)) == x
        assert dual(shift(x, k)) == shift(dual(x), -k)
        assert dual(direct_sum(x, y)) == direct_sum(dual(x), dual(y))
        assert sorted(len(p) for p in simplify(dual(x))) == sorted(len(p) for p in simplify(x))


@st.composite
def jacobi_forms(draw):
    k = draw(st.integers(0, 4))
    r = Fraction(2 * draw(st.integers(-3, 3)) + k % 2, 2)
    s = QYSeries.from_terms({(Fraction(draw(st.integers(0, 4))), r): draw(st.integers(1, 3))}, trunc=6)
    return JacobiForm(s, k, 2 * draw(st.integers(-6, 6)))


class TestGradingAdditivity:
    @CASES
    @given(jacobi_forms(), jacobi_forms())
    def test_product_grading(self, phi, psi):
        prod = phi * psi
        assert (prod.k, prod.degree) == (phi.k + psi.k, phi.degree + psi.degree)
        assert prod.weight == phi.weight + psi.weight
        assert prod.index == phi.index + psi.index
