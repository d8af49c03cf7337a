"""Weakly holomorphic integral modular forms Z[c4, c6, Delta^{+-1}]."""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from .cyclotomic import CycScalar, norm_rational, totient
from .linalg import rank, solve_exact
from .series import INF, QYSeries, series_add, series_mul


class InsufficientTruncation(Exception):
    pass


# -- integer power series helpers (list index = q-exponent) -----------------


def ps_mul(a: Sequence[int], b: Sequence[int], n: int) -> List[int]:
    out = [0] * n
    for i, x in enumerate(a[:n]):
        if x:
            for j, y in enumerate(b[: n - i]):
                out[i + j] += x * y
    return out


def ps_pow(a: Sequence[int], e: int, n: int) -> List[int]:
    if e < 0:
        return ps_pow(ps_inv(a, n), -e, n)
    result = [1] + [0] * (n - 1)
    base = list(a[:n]) + [0] * max(0, n - len(a))
    while e:
        if e & 1:
            result = ps_mul(result, base, n)
        e >>= 1
        if e:
            base = ps_mul(base, base, n)
    return result


def ps_inv(a: Sequence[int], n: int) -> List[int]:
    """Inverse of an integer power series with constant term +-1."""
    if a[0] not in (1, -1):
        raise ValueError("constant term must be a unit")
    out = [0] * n
    out[0] = a[0]
    for k in range(1, n):
        s = sum(a[j] * out[k - j] for j in range(1, min(k, len(a) - 1) + 1))
        out[k] = -s * a[0]
    return out


def sigma(n: int, k: int) -> int:
    return sum(d**k for d in range(1, n + 1) if n % d == 0)


def euler_product(n: int) -> List[int]:
    """Coefficients of prod_{m>=1} (1 - q^m) below q^n."""
    out = [1] + [0] * (n - 1)
    for m in range(1, n):
        for k in range(n - 1, m - 1, -1):
            out[k] -= out[k - m]
    return out


def _from_list(coeffs: Sequence[int], offset: int, trunc) -> QYSeries:
    terms = {offset + i: {0: (c,)} for i, c in enumerate(coeffs) if c}
    return QYSeries(terms, trunc=trunc, slope=(0, 0))


@dataclass(frozen=True)
class ModularForm:
    """A weakly holomorphic modular form of weight degree/2."""

    series: QYSeries
    degree: int

    def __post_init__(self):
        if not self.series.has_trivial_y() or self.series.qden != 1:
            raise ValueError("a modular form has integral q-exponents and no y-dependence")
        if self.degree % 2:
            raise ValueError("degree must be even")

    @property
    def weight(self) -> int:
        return self.degree // 2

    def __mul__(self, other):
        if isinstance(other, ModularForm):
            return ModularForm(series_mul(self.series, other.series), self.degree + other.degree)
        return ModularForm(self.series.scale(other), self.degree)

    __rmul__ = __mul__

    def __add__(self, other: "ModularForm") -> "ModularForm":
        if other.degree != self.degree:
            raise ValueError("cannot add forms of different degree")
        return ModularForm(series_add(self.series, other.series), self.degree)

    def __neg__(self) -> "ModularForm":
        return ModularForm(self.series.scale(-1), self.degree)

    def __sub__(self, other: "ModularForm") -> "ModularForm":
        return self + (-other)

    def __pow__(self, e: int) -> "ModularForm":
        return ModularForm(self.series**e, self.degree * e)

    def coefficients(self) -> Dict[int, CycScalar]:
        return {int(e): c for e, _, c in self.series.items()}

    def coefficient(self, n: int):
        c = self.series.coefficient(n, 0)
        return c.to_rational() if c.is_rational() else c


_DEGREES = {"c4": 8, "c6": 12, "delta": 24, "delta_inverse": -24}


def mf_generator(name: str, trunc: int) -> ModularForm:
    """c4, c6, Delta or Delta^{-1}, certified below q^trunc."""
    if trunc < 1:
        raise ValueError("truncation must be at least 1")
    if name == "c4":
        coeffs = [1] + [240 * sigma(n, 3) for n in range(1, trunc)]
        return ModularForm(_from_list(coeffs, 0, trunc), 8)
    if name == "c6":
        coeffs = [1] + [-504 * sigma(n, 5) for n in range(1, trunc)]
        return ModularForm(_from_list(coeffs, 0, trunc), 12)
    if name == "delta":
        # q * prod (1 - q^m)^24 below q^trunc
        prod = ps_pow(euler_product(trunc), 24, max(trunc - 1, 1))
        return ModularForm(_from_list(prod[: trunc - 1], 1, trunc), 24)
    if name == "delta_inverse":
        n = trunc + 1
        inv = ps_pow(euler_product(n), -24, n)
        return ModularForm(_from_list(inv, -1, trunc), -24)
    raise KeyError(f"unknown modular form generator {name!r}")


def mf_monomial(i: int, j: int, l: int, trunc: int) -> ModularForm:
    """c4^i * c6^j * Delta^l, certified below q^trunc."""
    if i < 0 or j < 0:
        raise ValueError("exponents of c4 and c6 must be nonnegative")
    n = trunc - l  # power-series precision after pulling out q^l
    if n <= 0:
        return ModularForm(QYSeries.zero(trunc), 8 * i + 12 * j + 24 * l)
    c4 = [1] + [240 * sigma(k, 3) for k in range(1, n)]
    c6 = [1] + [-504 * sigma(k, 5) for k in range(1, n)]
    acc = ps_pow(euler_product(n), 24 * l, n)
    acc = ps_mul(acc, ps_pow(c4, i, n), n)
    acc = ps_mul(acc, ps_pow(c6, j, n), n)
    return ModularForm(_from_list(acc, l, trunc), 8 * i + 12 * j + 24 * l)


def monomial_basis(degree: int, pole_bound: int) -> List[Tuple[int, int, int]]:
    """Exponents (i, j, l) with 8i + 12j + 24l = degree, j in {0, 1}, l >= -pole_bound."""
    out = []
    for j in (0, 1):
        l = -pole_bound
        while 24 * l <= degree - 12 * j:
            rest = degree - 12 * j - 24 * l
            if rest % 8 == 0:
                out.append((rest // 8, j, l))
            l += 1
    return sorted(out, key=lambda t: (t[2], t[1], t[0]))


@dataclass
class Membership:
    """Outcome of a membership test, certified up to ``certified_to``."""

    in_span: bool
    degree: int
    coordinates: Dict[Tuple[int, int, int], CycScalar] = field(default_factory=dict)
    integral: bool = False
    residual: Optional[QYSeries] = None
    certified_to: object = None

    def rational_coordinates(self) -> Dict[Tuple[int, int, int], object]:
        return {k: (v.to_rational() if v.is_rational() else v) for k, v in self.coordinates.items()}


def mf_membership(f, degree: int, pole_bound: int) -> Membership:
    """Coordinates of f in the monomials of the given degree with pole order <= pole_bound."""
    series = f.series if isinstance(f, ModularForm) else f
    if degree % 2:
        raise ValueError("degree must be even")
    if not series.has_trivial_y():
        raise ValueError("membership needs a series without y-dependence")
    trunc = series.trunc
    if trunc == INF:
        top = max([int(e) + 1 for e in series.q_exponents()] + [0])
        basis = monomial_basis(degree, pole_bound)
        top = max([top] + [l + 1 for _, _, l in basis])
        trunc = top
    trunc = int(trunc) if Fraction(trunc).denominator == 1 else int(trunc) + 1
    basis = monomial_basis(degree, pole_bound)
    lo = min([-pole_bound] + [int(e) for e in series.q_exponents() if e.denominator == 1])
    order = series.order
    phi = totient(order)
    rows = list(range(lo, trunc))
    monos = [mf_monomial(i, j, l, trunc).series for i, j, l in basis]
    matrix = [[Fraction(m.coefficient(e, 0).coeffs[0]) for m in monos] for e in rows]
    if basis and rank(matrix) < len(basis):
        raise InsufficientTruncation(
            f"{len(basis)} monomials but only rank {rank(matrix)} below q^{trunc}; raise the truncation"
        )
    coords: List[List[Fraction]] = [[Fraction(0)] * phi for _ in basis]
    consistent = True
    # fractional q-exponents can never be matched by monomials
    if series.qden != 1 and any(e.denominator != 1 for e in series.q_exponents()):
        consistent = False
    for comp in range(phi):
        rhs = [Fraction(series.coefficient(e, 0).coeffs[comp]) for e in rows]
        sol = solve_exact(matrix, rhs) if basis else ([] if not any(rhs) else None)
        if sol is None:
            consistent = False
            # least-structured fallback: fit on the first independent rows for a residual
            sol = _fit_pivot_rows(matrix, rhs, len(basis))
        for idx, x in enumerate(sol):
            coords[idx][comp] = x
    coordinates = {b: CycScalar(order, tuple(norm_rational(x) for x in c)) for b, c in zip(basis, coords)}
    span = QYSeries.zero(trunc, order)
    for m, (b, c) in zip(monos, coordinates.items()):
        if not c.is_zero():
            span = series_add(span, m.scale(c))
    residual = series_add(series.truncate(trunc), span.scale(-1))
    in_span = consistent and residual.is_zero()
    return Membership(
        in_span=in_span,
        degree=degree,
        coordinates=coordinates,
        integral=in_span and all(c.is_integral() for c in coordinates.values()),
        residual=None if in_span else residual,
        certified_to=series.trunc,
    )


def _fit_pivot_rows(matrix, rhs, n) -> List[Fraction]:
    chosen_rows: List[int] = []
    for i in range(len(matrix)):
        if rank([matrix[r] for r in chosen_rows + [i]]) > len(chosen_rows):
            chosen_rows.append(i)
        if len(chosen_rows) == n:
            break
    sol = solve_exact([matrix[r] for r in chosen_rows], [rhs[r] for r in chosen_rows])
    return sol if sol is not None else [Fraction(0)] * n


def evaluate_coordinates(coords: Mapping[Tuple[int, int, int], object], degree: int, trunc: int) -> ModularForm:
    """The span map: sum of coordinates times monomials."""
    total = ModularForm(QYSeries.zero(trunc), degree)
    for (i, j, l), c in coords.items():
        total = total + mf_monomial(i, j, l, trunc) * c
    return total


def to_csv(columns: Mapping[str, QYSeries]) -> str:
    """Coefficient table: one row per integral q-exponent, one column per series."""
    names = list(columns)
    hi = min(int(s.trunc) if s.trunc != INF else max([int(e) + 1 for e in s.q_exponents()] + [1]) for s in columns.values())
    firsts = [int(min(s.q_exponents())) for s in columns.values() if not s.is_zero()]
    lo = min(firsts) if firsts else 0
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["q_exponent"] + names)
    for e in range(lo, hi):
        row = [str(e)]
        for name in names:
            c = columns[name].coefficient(e, 0)
            row.append(str(c.to_rational()) if c.is_rational() else repr(c))
        writer.writerow(row)
    return buf.getvalue()
