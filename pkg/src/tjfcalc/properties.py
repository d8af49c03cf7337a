"""Randomized invariant checks shared by the verification runner."""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Callable, Dict, List, Tuple

from .cells import AttachLabel, CellComplex, direct_sum, dual, shift
from .cyclotomic import CycScalar, totient
from .series import QYSeries, series_add, series_mul, substitute_y

ORDERS = (1, 3, 4, 6)


def random_series(rng: random.Random, order: int, exact: bool = False, max_terms: int = 6) -> QYSeries:
    data = {}
    for _ in range(rng.randint(0, max_terms)):
        e = Fraction(rng.randint(-2, 6), rng.choice((1, 1, 2)))
        r = Fraction(rng.randint(-4, 4), 2)
        data[(e, r)] = CycScalar(order, tuple(rng.randint(-5, 5) for _ in range(totient(order))))
    s = QYSeries.from_terms(data, order=order)
    if exact:
        return s
    return s.truncate(Fraction(rng.randint(0, 12), rng.choice((1, 2))))


def _slope_for(s: QYSeries) -> Tuple[Fraction, Fraction]:
    # smallest r0 for sigma = 1/2 over the stored terms
    sigma = Fraction(1, 2)
    r0 = Fraction(0)
    for e, r, _ in s.items():
        r0 = max(r0, abs(r) - sigma * e)
    return sigma, r0


def _agree(a: QYSeries, b: QYSeries) -> bool:
    return a.trunc == b.trunc and a == b


def ring_axioms(rng: random.Random) -> bool:
    order = rng.choice(ORDERS)
    f, g, h = (random_series(rng, order) for _ in range(3))
    one = QYSeries.one(order=order)
    return (
        series_mul(f, g) == series_mul(g, f)
        and series_mul(series_mul(f, g), h) == series_mul(f, series_mul(g, h))
        and series_mul(f, series_add(g, h)) == series_add(series_mul(f, g), series_mul(f, h))
        and series_add(f, g) == series_add(g, f)
        and series_mul(f, one) == f
        and series_add(f, f.scale(-1)).is_zero()
    )


def truncation_soundness(rng: random.Random) -> bool:
    order = rng.choice(ORDERS)
    F, G = random_series(rng, order, exact=True), random_series(rng, order, exact=True)
    f = F.truncate(Fraction(rng.randint(-1, 10), rng.choice((1, 2))))
    g = G.truncate(Fraction(rng.randint(-1, 10), rng.choice((1, 2))))
    prod, tot = series_mul(f, g), series_add(f, g)
    return _agree(prod, series_mul(F, G).truncate(prod.trunc)) and _agree(tot, series_add(F, G).truncate(tot.trunc))


def slope_soundness(rng: random.Random) -> bool:
    order = rng.choice(ORDERS)
    F = random_series(rng, order, exact=True)
    G = random_series(rng, order, exact=True)
    F, G = F.with_slope(_slope_for(F)), G.with_slope(_slope_for(G))
    prod, tot = series_mul(F, G), series_add(F, G)
    if not (prod.satisfies_slope() and tot.satisfies_slope()):
        return False
    # substitution of a truncated series agrees with the exact one below its truncation
    n = rng.choice((2, 3))
    alpha = rng.randint(-(n - 1), n - 1)
    beta = rng.randint(0, n - 1)
    T = Fraction(rng.randint(1, 10))
    cut = F.truncate(T)
    sub = substitute_y(cut, beta, alpha, n)
    exact = substitute_y(F, beta, alpha, n)
    return _agree(sub, exact.truncate(sub.trunc))


def random_complex(rng: random.Random) -> CellComplex:
    n = rng.randint(1, 6)
    cells = [(f"c{i}", rng.randint(-8, 8)) for i in range(n)]
    atts = []
    labels = [l for l in AttachLabel if l is not AttachLabel.ZERO]
    for s, ds in cells:
        for t, dt in cells:
            if ds > dt and rng.random() < 0.4:
                fits = [l for l in labels if l.stem == ds - dt - 1]
                if fits:
                    atts.append((s, t, rng.choice(fits)))
                elif rng.random() < 0.3:
                    atts.append((s, t, AttachLabel.ZERO))
    return CellComplex(tuple(cells), tuple(atts))


def dual_involution(rng: random.Random) -> bool:
    x, y = random_complex(rng), random_complex(rng)
    k = rng.randint(-10, 10)
    return (
        dual(dual(x)) == x
        and dual(shift(x, k)) == shift(dual(x), -k)
        and dual(direct_sum(x, y)) == direct_sum(dual(x), dual(y))
    )


def grading_additivity(rng: random.Random) -> bool:
    from .jacobi import JacobiForm

    def form() -> "JacobiForm":
        k = rng.randint(0, 4)
        data = {(Fraction(rng.randint(0, 4)), Fraction(2 * rng.randint(-3, 3) + k % 2, 2)): rng.randint(-3, 3)}
        s = QYSeries.from_terms(data, trunc=6)
        return JacobiForm(s, k, 2 * rng.randint(-6, 6))

    phi, psi = form(), form()
    prod = phi * psi
    return (
        prod.k == phi.k + psi.k
        and prod.degree == phi.degree + psi.degree
        and prod.weight == phi.weight + psi.weight
        and prod.index == phi.index + psi.index
    )


PROPERTIES: Dict[str, Callable[[random.Random], bool]] = {
    "ring-axioms": ring_axioms,
    "truncation-soundness": truncation_soundness,
    "slope-soundness": slope_soundness,
    "dual-involution": dual_involution,
    "grading-additivity": grading_additivity,
}


def run_property(name: str, cases: int, seed: int = 0) -> Tuple[int, List[int]]:
    """Number of cases run and the indices that failed."""
    rng = random.Random(f"{name}:{seed}")
    check = PROPERTIES[name]
    failures = [i for i in range(cases) if not check(rng)]
    return cases, failures
