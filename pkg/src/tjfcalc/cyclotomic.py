"""Exact arithmetic in cyclotomic fields Q(zeta_N).

An element is stored as its canonical residue modulo the N-th cyclotomic
polynomial: a tuple of phi(N) rationals, lowest power of zeta first.
Rationals are kept as ``int`` whenever the denominator is 1, which keeps the
common integral case fast.
"""

from __future__ import annotations

import cmath
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Iterable, Sequence, Union

Rational = Union[int, Fraction]


def norm_rational(x: Rational) -> Rational:
    if isinstance(x, Fraction) and x.denominator == 1:
        return x.numerator
    return x


def lcm(a: int, b: int) -> int:
    return a // gcd(a, b) * b


@lru_cache(maxsize=None)
def totient(n: int) -> int:
    result, m, p = n, n, 2
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            result -= result // p
        p += 1
    if m > 1:
        result -= result // m
    return result


def _poly_divexact(num: list[int], den: Sequence[int]) -> list[int]:
    # both ascending, den monic
    num = list(num)
    dn = len(den) - 1
    out = [0] * (len(num) - dn)
    for i in range(len(out) - 1, -1, -1):
        c = num[i + dn]
        out[i] = c
        if c:
            for j, d in enumerate(den):
                num[i + j] -= c * d
    assert not any(num[:dn]), "non-exact cyclotomic division"
    return out


@lru_cache(maxsize=None)
def cyclotomic_poly(n: int) -> tuple[int, ...]:
    """Coefficients of the n-th cyclotomic polynomial, ascending."""
    if n < 1:
        raise ValueError("cyclotomic order must be positive")
    num = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            num = _poly_divexact(num, cyclotomic_poly(d))
    return tuple(num)


@lru_cache(maxsize=None)
def _power_table(n: int, top: int) -> tuple[tuple[int, ...], ...]:
    """Residues of zeta_n**e for e in range(top), as integer vectors."""
    phi = totient(n)
    poly = cyclotomic_poly(n)
    rows = []
    cur = [0] * phi
    cur[0] = 1
    for _ in range(top):
        rows.append(tuple(cur))
        # multiply by x and reduce
        lead = cur[-1]
        cur = [0] + cur[:-1]
        if lead:
            for j in range(phi):
                cur[j] -= lead * poly[j]
    return tuple(rows)


def zeta_power(n: int, e: int) -> tuple[int, ...]:
    return _power_table(n, n)[e % n]


def reduce_poly(coeffs: Sequence[Rational], n: int) -> tuple[Rational, ...]:
    """Canonical residue of sum coeffs[i] * zeta_n**i."""
    phi = totient(n)
    out: list[Rational] = [0] * phi
    table = _power_table(n, n)
    for i, c in enumerate(coeffs):
        if not c:
            continue
        row = table[i % n]
        for j in range(phi):
            if row[j]:
                out[j] += c * row[j]
    return tuple(norm_rational(x) for x in out)


@lru_cache(maxsize=None)
def _embed_table(n_from: int, n_to: int) -> tuple[tuple[int, ...], ...]:
    step = n_to // n_from
    return tuple(zeta_power(n_to, i * step) for i in range(totient(n_from)))


def embed(coeffs: Sequence[Rational], n_from: int, n_to: int) -> tuple[Rational, ...]:
    """Map an element of Q(zeta_{n_from}) into Q(zeta_{n_to})."""
    if n_from == n_to:
        return tuple(coeffs)
    if n_to % n_from:
        raise ValueError(f"Q(zeta_{n_from}) does not embed in Q(zeta_{n_to})")
    phi = totient(n_to)
    out: list[Rational] = [0] * phi
    for c, row in zip(coeffs, _embed_table(n_from, n_to)):
        if c:
            for j in range(phi):
                if row[j]:
                    out[j] += c * row[j]
    return tuple(norm_rational(x) for x in out)


def vec_mul(u: Sequence[Rational], v: Sequence[Rational], n: int) -> tuple[Rational, ...]:
    phi = len(u)
    if phi == 1:
        return (norm_rational(u[0] * v[0]),)
    prod: list[Rational] = [0] * (2 * phi - 1)
    for i, a in enumerate(u):
        if a:
            for j, b in enumerate(v):
                if b:
                    prod[i + j] += a * b
    return reduce_poly(prod, n)


def vec_add(u: Sequence[Rational], v: Sequence[Rational]) -> tuple[Rational, ...]:
    return tuple(norm_rational(a + b) for a, b in zip(u, v))


def vec_is_zero(u: Sequence[Rational]) -> bool:
    return not any(u)


def vec_inverse(u: Sequence[Rational], n: int) -> tuple[Rational, ...]:
    """Inverse by solving the multiplication-by-u linear system."""
    phi = len(u)
    if not any(u):
        raise ZeroDivisionError("inverse of zero in a cyclotomic field")
    basis = [tuple(1 if i == j else 0 for i in range(phi)) for j in range(phi)]
    cols = [vec_mul(u, e, n) for e in basis]
    # augmented matrix rows: M x = e_0 where M[i][j] = cols[j][i]
    rows = [[Fraction(cols[j][i]) for j in range(phi)] + [Fraction(int(i == 0))] for i in range(phi)]
    for c in range(phi):
        piv = next(r for r in range(c, phi) if rows[r][c] != 0)
        rows[c], rows[piv] = rows[piv], rows[c]
        inv = 1 / rows[c][c]
        rows[c] = [x * inv for x in rows[c]]
        for r in range(phi):
            if r != c and rows[r][c] != 0:
                f = rows[r][c]
                rows[r] = [x - f * y for x, y in zip(rows[r], rows[c])]
    return tuple(norm_rational(rows[i][phi]) for i in range(phi))


class CycScalar:
    """An element of the N-th cyclotomic field with exact rational coordinates."""

    __slots__ = ("order", "coeffs")

    def __init__(self, order: int, coeffs: Iterable[Rational]):
        coeffs = tuple(norm_rational(Fraction(c)) for c in coeffs)
        if len(coeffs) != totient(order):
            coeffs = reduce_poly(coeffs, order)
        object.__setattr__(self, "order", order)
        object.__setattr__(self, "coeffs", coeffs)

    def __setattr__(self, name, value):
        raise AttributeError("CycScalar is immutable")

    @classmethod
    def rational(cls, x: Rational, order: int = 1) -> "CycScalar":
        return cls(order, (x,) + (0,) * (totient(order) - 1))

    @classmethod
    def zeta(cls, order: int, power: int = 1) -> "CycScalar":
        return cls(order, zeta_power(order, power))

    @classmethod
    def reduce(cls, raw: Sequence[Rational], order: int) -> "CycScalar":
        """Reduce a polynomial in zeta_order (ascending coefficients)."""
        if order < 1:
            raise ValueError("cyclotomic order must be positive")
        return cls(order, reduce_poly([Fraction(c) for c in raw], order))

    def embed(self, order: int) -> "CycScalar":
        return CycScalar(order, embed(self.coeffs, self.order, order))

    def _coerce(self, other) -> tuple["CycScalar", "CycScalar"]:
        if not isinstance(other, CycScalar):
            other = CycScalar.rational(other, self.order)
        if other.order == self.order:
            return self, other
        n = lcm(self.order, other.order)
        return self.embed(n), other.embed(n)

    def __add__(self, other):
        a, b = self._coerce(other)
        return CycScalar(a.order, vec_add(a.coeffs, b.coeffs))

    __radd__ = __add__

    def __neg__(self):
        return CycScalar(self.order, tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        a, b = self._coerce(other)
        return CycScalar(a.order, vec_mul(a.coeffs, b.coeffs, a.order))

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        result = CycScalar.rational(1, self.order)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def inverse(self) -> "CycScalar":
        return CycScalar(self.order, vec_inverse(self.coeffs, self.order))

    def __truediv__(self, other):
        if not isinstance(other, CycScalar):
            return CycScalar(self.order, tuple(Fraction(c) / other for c in self.coeffs))
        a, b = self._coerce(other)
        return a * b.inverse()

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def is_integral(self) -> bool:
        # the power basis is an integral basis of Z[zeta_N]
        return all(isinstance(c, int) for c in self.coeffs)

    def to_rational(self) -> Rational:
        if not self.is_rational():
            raise ValueError(f"{self!r} is not rational")
        return self.coeffs[0]

    def to_complex(self) -> complex:
        z = cmath.exp(2j * cmath.pi / self.order)
        return sum(complex(c) * z**i for i, c in enumerate(self.coeffs))

    def __eq__(self, other) -> bool:
        if not isinstance(other, CycScalar):
            try:
                other = CycScalar.rational(other, self.order)
            except TypeError:
                return NotImplemented
        a, b = self._coerce(other)
        return a.coeffs == b.coeffs

    def __hash__(self):
        if self.is_rational():
            return hash(self.coeffs[0])
        return hash((self.order, self.coeffs))

    def __repr__(self) -> str:
        if self.is_rational():
            return f"CycScalar({self.coeffs[0]})"
        terms = [f"{c}*z{self.order}^{i}" if i else str(c) for i, c in enumerate(self.coeffs) if c]
        return "CycScalar(" + " + ".join(terms) + ")"
