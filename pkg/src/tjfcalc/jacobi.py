"""Integral Jacobi forms: generators a, b, c, grading, torsion-point restriction."""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Optional, Sequence, Tuple

from .cyclotomic import totient
from .modular import Membership, ModularForm, mf_membership
from .series import (
    INF,
    QYSeries,
    descend,
    eval_y1,
    series_add,
    series_div_exact,
    series_mul,
    substitute_y,
)


class TwistNotTrivialized(Exception):
    pass


class FractionalResidue(Exception):
    def __init__(self, exponents):
        super().__init__(f"fractional q-powers survive the fiberwise sum: {[str(e) for e in exponents]}")
        self.exponents = list(exponents)


class TailBoundViolated(Exception):
    pass


@dataclass(frozen=True)
class JacobiForm:
    """A Jacobi form of index k/2 and weight degree/2 - k."""

    series: QYSeries
    k: int
    degree: int

    def __post_init__(self):
        if self.k < 0:
            raise ValueError("k must be nonnegative")
        par = self.k % 2
        for ys in self.series.terms.values():
            if any(d % 2 != par for d in ys):
                raise ValueError(f"y-exponents must lie in Z + {self.k}/2")

    @property
    def weight(self) -> Fraction:
        return Fraction(self.degree, 2) - self.k

    @property
    def index(self) -> Fraction:
        return Fraction(self.k, 2)

    def __mul__(self, other):
        if isinstance(other, JacobiForm):
            return jf_mul(self, other)
        if isinstance(other, ModularForm):
            return JacobiForm(series_mul(self.series, other.series), self.k, self.degree + other.degree)
        return JacobiForm(self.series.scale(other), self.k, self.degree)

    __rmul__ = __mul__

    def __add__(self, other: "JacobiForm") -> "JacobiForm":
        if (other.k, other.degree) != (self.k, self.degree):
            raise ValueError("cannot add Jacobi forms of different bidegree")
        return JacobiForm(series_add(self.series, other.series), self.k, self.degree)

    def __sub__(self, other: "JacobiForm") -> "JacobiForm":
        return self + other * -1

    def __pow__(self, e: int) -> "JacobiForm":
        if e < 1:
            raise ValueError("positive powers only")
        out = self
        for _ in range(e - 1):
            out = jf_mul(out, self)
        return out

    def to_json_obj(self) -> dict:
        obj = self.series.to_json_obj()
        obj["k"] = self.k
        obj["degree"] = self.degree
        return obj

    @classmethod
    def from_json_obj(cls, obj) -> "JacobiForm":
        return cls(QYSeries.from_json_obj(obj), int(obj["k"]), int(obj["degree"]))


# -- generators -------------------------------------------------------------


def _theta_product(trunc: int) -> Dict[int, Dict[int, int]]:
    """prod_{m>=1} (1 - q^m y)(1 - q^m / y) / (1 - q^m)^2 below q^trunc, doubled y-exponents."""
    rows: Dict[int, Dict[int, int]] = {e: {} for e in range(trunc)}
    rows[0][0] = 1
    for m in range(1, trunc):
        for shift in (2, -2):
            for e in range(trunc - 1, m - 1, -1):
                src = rows[e - m]
                if not src:
                    continue
                dst = rows[e]
                for d, c in src.items():
                    key = d + shift
                    dst[key] = dst.get(key, 0) - c
        for _ in range(2):
            for e in range(m, trunc):
                src = rows[e - m]
                if not src:
                    continue
                dst = rows[e]
                for d, c in src.items():
                    dst[d] = dst.get(d, 0) + c
    return rows


def _to_series(rows: Dict[int, Dict[int, int]], trunc, slope) -> QYSeries:
    terms = {e: {d: (c,) for d, c in ys.items() if c} for e, ys in rows.items()}
    return QYSeries(terms, trunc=trunc, slope=slope)


def _product_part(trunc: int) -> QYSeries:
    return _to_series(_theta_product(trunc), trunc, (1, 0))


A_SLOPE = (Fraction(1, 2), Fraction(17, 16))


def gen_a(trunc: int) -> JacobiForm:
    """a = (y^(1/2) - y^(-1/2)) prod (1-q^m y)(1-q^m/y)/(1-q^m)^2, index 1/2, degree 0."""
    if trunc < 1:
        raise ValueError("truncation must be at least 1")
    rows = _theta_product(trunc)
    out: Dict[int, Dict[int, int]] = {}
    for e, ys in rows.items():
        acc: Dict[int, int] = {}
        for d, c in ys.items():
            acc[d + 1] = acc.get(d + 1, 0) + c
            acc[d - 1] = acc.get(d - 1, 0) - c
        out[e] = acc
    # theta-series support r^2 <= 2e + 1/4 gives |r| <= e/2 + 17/16; slope 1/2
    # keeps substitution at z = (tau + beta)/n sound for a(nz)
    series = _to_series(out, trunc, None).with_slope(A_SLOPE)
    return JacobiForm(series, 1, 0)


def _divisor_series(trunc: int) -> QYSeries:
    """sum_{n>=1} q^n sum_{d|n} d (y^d - 2 + y^-d)."""
    terms: Dict[int, Dict[int, Tuple[int]]] = {}
    for n in range(1, trunc):
        ys: Dict[int, int] = {}
        for d in range(1, n + 1):
            if n % d == 0:
                ys[2 * d] = ys.get(2 * d, 0) + d
                ys[-2 * d] = ys.get(-2 * d, 0) + d
                ys[0] = ys.get(0, 0) - 2 * d
        terms[n] = {k: (v,) for k, v in ys.items()}
    return QYSeries(terms, trunc=trunc, slope=(1, 0))


def gen_b(trunc: int) -> JacobiForm:
    """b = a^2 + 12 A^2 + 12 a^2 S with A the product part of a and S the divisor sum."""
    if trunc < 1:
        raise ValueError("truncation must be at least 1")
    a = gen_a(trunc).series
    big_a = _product_part(trunc)
    a2 = series_mul(a, a)
    total = series_add(series_add(a2, series_mul(big_a, big_a).scale(12)), series_mul(a2, _divisor_series(trunc)).scale(12))
    return JacobiForm(total.with_slope((1, 1)), 2, 4)


def gen_c(trunc: int) -> JacobiForm:
    """c = a(2z) / a(z), index 3/2, degree 6."""
    a = gen_a(trunc)
    quotient = series_div_exact(scale_z(a, 2).series, a.series, slope=(1, Fraction(3, 2)))
    return JacobiForm(quotient, 3, 6)


GENERATORS = {"a": gen_a, "b": gen_b, "c": gen_c}


# -- operations -------------------------------------------------------------


def jf_mul(phi: JacobiForm, psi: JacobiForm) -> JacobiForm:
    return JacobiForm(series_mul(phi.series, psi.series), phi.k + psi.k, phi.degree + psi.degree)


def scale_z(phi: JacobiForm, n: int) -> JacobiForm:
    """phi(n z): index times n^2, weight unchanged."""
    return JacobiForm(phi.series.map_y(n), phi.k * n * n, phi.degree + 2 * phi.k * (n * n - 1))


def restrict_z0(phi: JacobiForm) -> ModularForm:
    return ModularForm(eval_y1(phi.series), phi.degree - 2 * phi.k)


def _centered(alpha: int, n: int) -> int:
    a = alpha % n
    return a if 2 * a <= n else a - n


@dataclass(frozen=True)
class TorsionRestriction:
    """Values at the n-torsion points z = (alpha tau + beta)/n, keyed by (alpha, beta)."""

    n: int
    degree: int
    components: Dict[Tuple[int, int], QYSeries]
    normalized: bool = True

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.components.values())

    def to_json_obj(self) -> dict:
        return {
            "n": self.n,
            "degree": self.degree,
            "normalized": self.normalized,
            "components": {f"{a},{b}": s.to_json_obj() for (a, b), s in sorted(self.components.items())},
        }


def torsion_restrict(phi: JacobiForm, n: int, normalized: bool = True) -> TorsionRestriction:
    """Restrict to the n-torsion points.

    Normalized mode multiplies component (alpha, beta) by
    e(k/2 * (lam^2 tau + lam mu)) with lam = alpha/n, mu = beta/n, using the
    representative of alpha with least absolute value. At k = n^2 this is
    q^(alpha^2/2) * (-1)^(alpha beta). The q-power comes from the elliptic law;
    the sign is the Heisenberg cocycle without which half-integral q-powers
    survive the fiberwise sum. Raw mode returns the bare evaluations.
    """
    if n < 1:
        raise ValueError("n must be positive")
    if normalized and phi.k != n * n:
        raise TwistNotTrivialized(f"normalized restriction needs k = n^2 = {n * n}, got k = {phi.k}")
    comps: Dict[Tuple[int, int], QYSeries] = {}
    for alpha in range(n):
        ac = _centered(alpha, n)
        for beta in range(n):
            s = substitute_y(phi.series, beta, ac, n)
            if normalized and ac:
                s = s.shift_q(Fraction(ac * ac, 2))
                if (ac * beta) % 2:
                    s = s.scale(-1)
            comps[(alpha, beta)] = descend(s) if phi.k % 2 == 0 else s
    return TorsionRestriction(n, phi.degree - 2 * phi.k, comps, normalized)


@dataclass
class TorsionSum:
    total: QYSeries
    membership: Optional[Membership]
    integral_all_components: bool
    integral_cusp_component: bool


def torsion_sum(restriction: TorsionRestriction, pole_bound: int) -> TorsionSum:
    """Fiberwise sum over all n^2 torsion points, then MF membership."""
    if not restriction.normalized:
        raise ValueError("the fiberwise sum is only defined for normalized restrictions")
    comps = list(restriction.components.values())
    total = comps[0]
    for c in comps[1:]:
        total = series_add(total, c)
    frac = [e for e in total.q_exponents() if e.denominator != 1]
    if frac:
        raise FractionalResidue(frac)
    total = descend(total)
    if total.trunc != INF:
        total = total.truncate(math.ceil(total.trunc))
    membership = mf_membership(total, restriction.degree, pole_bound)
    return TorsionSum(
        total=total,
        membership=membership,
        integral_all_components=all(c.is_integral() for c in comps),
        integral_cusp_component=restriction.components[(0, 0)].is_integral(),
    )


# -- numeric covariance -----------------------------------------------------


def evaluate(series: QYSeries, tau: complex, z: complex) -> complex:
    """Float evaluation of the stored terms at (tau, z)."""
    total = 0j
    for e, ys in series.terms.items():
        qe = cmath.exp(2j * math.pi * tau * e / series.qden)
        inner = 0j
        for d, c in ys.items():
            inner += _to_complex(c, series.order) * cmath.exp(1j * math.pi * d * z)
        total += qe * inner
    return total


def _to_complex(c, order: int) -> complex:
    if len(c) == 1:
        return complex(c[0])
    w = cmath.exp(2j * math.pi / order)
    return sum(complex(x) * w**i for i, x in enumerate(c))


def tail_estimate(series: QYSeries, tau: complex, z: complex) -> float:
    """Geometric estimate of the omitted tail at (tau, z).

    Level sums S_n = sum_r |c(n,r)| |y^r| over the upper half of the stored
    range are fit by rho^n; the tail is then bounded by sum_{n>=T} (rho |q|)^n.
    """
    if series.trunc == INF:
        return 0.0
    x = math.exp(-2 * math.pi * tau.imag)
    levels = {}
    for e, ys in series.terms.items():
        s = sum(abs(_to_complex(c, series.order)) * math.exp(-math.pi * d * z.imag) for d, c in ys.items())
        levels[Fraction(e, series.qden)] = s
    top = float(series.trunc)
    rho = 1.0
    for e, s in levels.items():
        if e >= max(1, top / 2) and s > 0:
            rho = max(rho, s ** (1.0 / float(e)))
    ratio = rho * x
    if ratio >= 1:
        return math.inf
    return ratio**top / (1 - ratio)


@dataclass
class CovarianceResult:
    passed: bool
    residual: float
    tail: float
    details: Dict[str, float] = field(default_factory=dict)


def numeric_covariance_check(
    phi: JacobiForm,
    gamma: Sequence[int] = (1, 0, 0, 1),
    shift: Sequence[int] = (0, 0),
    sample: Tuple[complex, complex] = (2j, 0.1 + 0.05j),
    tol: float = 1e-6,
) -> CovarianceResult:
    """Check the modular law for gamma and the elliptic law for the lattice shift.

    The elliptic law carries the sign (-1)^(k(lambda+mu)) that half-integral
    index forces (y^(1/2) changes sign under z -> z+1).
    """
    a, b, c, d = gamma
    if a * d - b * c != 1:
        raise ValueError("gamma must have determinant 1")
    tau, z = complex(sample[0]), complex(sample[1])
    if tau.imag <= 0:
        raise ValueError("tau must lie in the upper half-plane")
    k, w = phi.k, phi.weight
    s = phi.series
    details: Dict[str, float] = {}
    points = [(tau, z)]

    cz = c * tau + d
    tau_g = (a * tau + b) / cz
    z_g = z / cz
    lam, mu = shift
    z_e = z + lam * tau + mu
    points += [(tau_g, z_g), (tau, z_e)]
    tail = 0.0
    for t, zz in points:
        tail = max(tail, tail_estimate(s, t, zz))
    if tail > tol:
        raise TailBoundViolated(f"estimated tail {tail:.3g} exceeds tolerance {tol:.3g}")

    # both laws are compared after dividing out the automorphy factor, so the
    # residual lives at the scale of phi(tau, z)
    base = evaluate(s, tau, z)
    factor = cz ** float(w) * cmath.exp(1j * math.pi * k * c * z * z / cz)
    details["modular"] = abs(evaluate(s, tau_g, z_g) / factor - base)
    sign = -1 if (k * (lam + mu)) % 2 else 1
    factor_e = sign * cmath.exp(-1j * math.pi * k * (lam * lam * tau + 2 * lam * z))
    details["elliptic"] = abs(evaluate(s, tau, z_e) / factor_e - base)
    residual = max(details.values())
    return CovarianceResult(residual <= tol, residual, tail, details)
