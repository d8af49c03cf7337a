"""Truncated bivariate Laurent series in q and y^(1/2) over cyclotomic fields.

A series is stored sparsely as ``{q_numerator: {doubled_y: coeff}}`` where the
q-exponent is ``q_numerator / qden`` and the y-exponent is ``doubled_y / 2``.
Coefficients are tuples of phi(order) rationals (see :mod:`tjfcalc.cyclotomic`).

Every series carries a truncation ``trunc``: coefficients at q-exponents below
it are certified complete, nothing at or above it is stored. ``math.inf``
marks an exact (polynomial) series. An optional slope certificate
``(sigma, r0)`` asserts that every term, stored or not, obeys
``|r| <= sigma * e + r0`` for q-exponent ``e`` and y-exponent ``r``.
"""

from __future__ import annotations

import json
import math
from fractions import Fraction
from typing import Dict, Iterable, Iterator, Mapping, Optional, Tuple, Union

from .cyclotomic import (
    CycScalar,
    Rational,
    embed,
    lcm,
    norm_rational,
    reduce_poly,
    totient,
    vec_add,
    vec_inverse,
    vec_mul,
    zeta_power,
)

INF = math.inf
Coeff = Tuple[Rational, ...]
Terms = Dict[int, Dict[int, Coeff]]
Trunc = Union[Fraction, float]
Slope = Optional[Tuple[Fraction, Fraction]]


class SeriesError(Exception):
    pass


class NotDivisible(SeriesError):
    def __init__(self, q_exponent: Fraction):
        super().__init__(f"not an exact quotient: division fails at q^{q_exponent}")
        self.q_exponent = q_exponent


class NoSlopeCertificate(SeriesError):
    pass


class BeyondTruncation(SeriesError):
    pass


def _frac_trunc(t) -> Trunc:
    if t is None or t == INF:
        return INF
    return Fraction(t)


def _as_coeff(x, order: int) -> Coeff:
    if isinstance(x, CycScalar):
        return embed(x.coeffs, x.order, order) if x.order != order else x.coeffs
    if isinstance(x, tuple):
        return x
    return (norm_rational(Fraction(x)),) + (0,) * (totient(order) - 1)


class YLaurent:
    """A Laurent polynomial in y^(1/2) with cyclotomic coefficients."""

    __slots__ = ("order", "terms")

    def __init__(self, order: int, terms: Mapping[int, Coeff]):
        object.__setattr__(self, "order", order)
        object.__setattr__(self, "terms", {d: c for d, c in sorted(terms.items()) if any(c)})

    def __setattr__(self, name, value):
        raise AttributeError("YLaurent is immutable")

    @classmethod
    def from_dict(cls, data: Mapping[Fraction, object], order: int = 1) -> "YLaurent":
        """Build from ``{y_exponent: coefficient}`` with half-integer exponents."""
        terms: Dict[int, Coeff] = {}
        for r, c in data.items():
            d = Fraction(r) * 2
            if d.denominator != 1:
                raise ValueError("y-exponents must be half-integers")
            terms[int(d)] = _as_coeff(c, order)
        return cls(order, terms)

    def coefficient(self, y_exponent) -> CycScalar:
        d = Fraction(y_exponent) * 2
        if d.denominator != 1:
            return CycScalar.rational(0, self.order)
        c = self.terms.get(int(d))
        return CycScalar(self.order, c) if c else CycScalar.rational(0, self.order)

    def support(self) -> list[Fraction]:
        return [Fraction(d, 2) for d in self.terms]

    def is_zero(self) -> bool:
        return not self.terms

    def __mul__(self, other: "YLaurent") -> "YLaurent":
        n = lcm(self.order, other.order)
        a, b = _ylaurent_embed(self.terms, self.order, n), _ylaurent_embed(other.terms, other.order, n)
        return YLaurent(n, _ypoly_mul(a, b, n))

    def __add__(self, other: "YLaurent") -> "YLaurent":
        n = lcm(self.order, other.order)
        a, b = _ylaurent_embed(self.terms, self.order, n), _ylaurent_embed(other.terms, other.order, n)
        return YLaurent(n, _ypoly_add(a, b))

    def __eq__(self, other) -> bool:
        if not isinstance(other, YLaurent):
            return NotImplemented
        n = lcm(self.order, other.order)
        return _ylaurent_embed(self.terms, self.order, n) == _ylaurent_embed(other.terms, other.order, n)

    def __hash__(self):
        return hash(tuple(self.terms.items()))

    def __repr__(self) -> str:
        parts = [f"{CycScalar(self.order, c)!r}*y^({d}/2)" for d, c in self.terms.items()]
        return "YLaurent(" + (" + ".join(parts) or "0") + ")"


def _ylaurent_embed(terms: Mapping[int, Coeff], n_from: int, n_to: int) -> Dict[int, Coeff]:
    if n_from == n_to:
        return dict(terms)
    return {d: embed(c, n_from, n_to) for d, c in terms.items()}


def _ypoly_add(a: Mapping[int, Coeff], b: Mapping[int, Coeff]) -> Dict[int, Coeff]:
    out = dict(a)
    for d, c in b.items():
        if d in out:
            s = vec_add(out[d], c)
            if any(s):
                out[d] = s
            else:
                del out[d]
        else:
            out[d] = c
    return out


def _ypoly_mul(a: Mapping[int, Coeff], b: Mapping[int, Coeff], order: int) -> Dict[int, Coeff]:
    out: Dict[int, Coeff] = {}
    for da, ca in a.items():
        for db, cb in b.items():
            p = vec_mul(ca, cb, order)
            d = da + db
            out[d] = vec_add(out[d], p) if d in out else p
    return {d: c for d, c in out.items() if any(c)}


def _ypoly_divexact(num: Mapping[int, Coeff], den: Mapping[int, Coeff], order: int) -> Optional[Dict[int, Coeff]]:
    """Exact Laurent-polynomial division, or None when a remainder survives."""
    if not num:
        return {}
    rem = dict(num)
    dtop = max(den)
    dlow = min(den)
    inv_top = vec_inverse(den[dtop], order)
    quot: Dict[int, Coeff] = {}
    while rem:
        top = max(rem)
        if top - dtop < min(rem) - dlow:
            return None
        shift = top - dtop
        coef = vec_mul(rem[top], inv_top, order)
        quot[shift] = coef
        for d, c in den.items():
            key = d + shift
            sub = vec_mul(c, coef, order)
            val = vec_add(rem.get(key, (0,) * len(c)), tuple(-x for x in sub))
            if any(val):
                rem[key] = val
            else:
                rem.pop(key, None)
    return quot


class QYSeries:
    """Immutable truncated Laurent series in q^(1/qden) and y^(1/2)."""

    __slots__ = ("order", "qden", "trunc", "slope", "terms")

    def __init__(self, terms: Terms, *, order: int = 1, qden: int = 1, trunc=INF, slope=None, _canonical=False):
        trunc = _frac_trunc(trunc)
        if slope is not None:
            slope = (Fraction(slope[0]), Fraction(slope[1]))
        if not _canonical:
            limit = trunc * qden
            clean: Terms = {}
            for e, ys in terms.items():
                if e >= limit:
                    continue
                ys = {d: c for d, c in ys.items() if any(c)}
                if ys:
                    clean[e] = ys
            terms = clean
            # shrink the q-denominator as far as the support allows
            g = qden
            for e in terms:
                g = math.gcd(g, e)
                if g == 1:
                    break
            if g > 1 and terms:
                terms = {e // g: ys for e, ys in terms.items()}
                qden //= g
            elif not terms:
                qden = 1
            terms = {e: dict(sorted(terms[e].items())) for e in sorted(terms)}
        set_ = object.__setattr__
        set_(self, "order", order)
        set_(self, "qden", qden)
        set_(self, "trunc", trunc)
        set_(self, "slope", slope)
        set_(self, "terms", terms)

    def __setattr__(self, name, value):
        raise AttributeError("QYSeries is immutable")

    # -- constructors -----------------------------------------------------

    @classmethod
    def zero(cls, trunc=INF, order: int = 1) -> "QYSeries":
        return cls({}, order=order, trunc=trunc, slope=(0, 0))

    @classmethod
    def one(cls, trunc=INF, order: int = 1) -> "QYSeries":
        return cls.monomial(0, 0, 1, trunc=trunc, order=order)

    @classmethod
    def monomial(cls, q_exponent, y_exponent, coeff=1, *, trunc=INF, order: int = 1) -> "QYSeries":
        e, r = Fraction(q_exponent), Fraction(y_exponent)
        if isinstance(coeff, CycScalar) and order == 1:
            order = coeff.order
        d = r * 2
        if d.denominator != 1:
            raise ValueError("y-exponents must be half-integers")
        terms = {e.numerator: {int(d): _as_coeff(coeff, order)}}
        return cls(terms, order=order, qden=e.denominator, trunc=trunc, slope=(0, abs(r)))

    @classmethod
    def from_terms(cls, data: Mapping[Tuple[object, object], object], *, trunc=INF, order: int = 1, slope=None) -> "QYSeries":
        """Build from ``{(q_exponent, y_exponent): coefficient}``."""
        den = 1
        keys = [(Fraction(e), Fraction(r)) for e, r in data]
        for e, _ in keys:
            den = lcm(den, e.denominator)
        terms: Terms = {}
        for (e, r), c in zip(keys, data.values()):
            d = r * 2
            if d.denominator != 1:
                raise ValueError("y-exponents must be half-integers")
            ys = terms.setdefault(int(e * den), {})
            cc = _as_coeff(c, order)
            ys[int(d)] = vec_add(ys[int(d)], cc) if int(d) in ys else cc
        return cls(terms, order=order, qden=den, trunc=trunc, slope=slope)

    # -- inspection -------------------------------------------------------

    def items(self) -> Iterator[Tuple[Fraction, Fraction, CycScalar]]:
        for e, ys in self.terms.items():
            for d, c in ys.items():
                yield Fraction(e, self.qden), Fraction(d, 2), CycScalar(self.order, c)

    def is_zero(self) -> bool:
        return not self.terms

    def valuation(self) -> Trunc:
        """Lowest certified q-exponent: the first stored one, else the truncation."""
        if self.terms:
            return Fraction(next(iter(self.terms)), self.qden)
        return self.trunc

    def q_exponents(self) -> list[Fraction]:
        return [Fraction(e, self.qden) for e in self.terms]

    def coefficient(self, q_exponent, y_exponent) -> CycScalar:
        e = Fraction(q_exponent)
        if e >= self.trunc:
            raise BeyondTruncation(f"q^{e} is not below the truncation {self.trunc}")
        num = e * self.qden
        d = Fraction(y_exponent) * 2
        zero = CycScalar.rational(0, self.order)
        if num.denominator != 1 or d.denominator != 1:
            return zero
        c = self.terms.get(int(num), {}).get(int(d))
        return CycScalar(self.order, c) if c else zero

    def y_coefficient(self, q_exponent) -> YLaurent:
        e = Fraction(q_exponent)
        if e >= self.trunc:
            raise BeyondTruncation(f"q^{e} is not below the truncation {self.trunc}")
        num = e * self.qden
        if num.denominator != 1:
            return YLaurent(self.order, {})
        return YLaurent(self.order, self.terms.get(int(num), {}))

    def has_trivial_y(self) -> bool:
        return all(list(ys) == [0] for ys in self.terms.values())

    def is_integral(self) -> bool:
        return all(isinstance(x, int) for ys in self.terms.values() for c in ys.values() for x in c)

    def satisfies_slope(self, slope: Slope = None) -> bool:
        slope = slope if slope is not None else self.slope
        if slope is None:
            return True
        sigma, r0 = slope
        for e, ys in self.terms.items():
            bound = 2 * (sigma * Fraction(e, self.qden) + r0)
            if any(abs(d) > bound for d in ys):
                return False
        return True

    def with_slope(self, slope: Slope) -> "QYSeries":
        out = QYSeries(self.terms, order=self.order, qden=self.qden, trunc=self.trunc, slope=slope, _canonical=True)
        if slope is not None and not out.satisfies_slope():
            raise ValueError(f"stored terms violate the slope certificate {slope}")
        return out

    def truncate(self, trunc) -> "QYSeries":
        trunc = min(_frac_trunc(trunc), self.trunc)
        return QYSeries(self.terms, order=self.order, qden=self.qden, trunc=trunc, slope=self.slope)

    def embed(self, order: int) -> "QYSeries":
        if order == self.order:
            return self
        terms = {e: {d: embed(c, self.order, order) for d, c in ys.items()} for e, ys in self.terms.items()}
        return QYSeries(terms, order=order, qden=self.qden, trunc=self.trunc, slope=self.slope, _canonical=True)

    def _rescale(self, qden: int) -> Terms:
        k = qden // self.qden
        if k == 1:
            return self.terms
        return {e * k: ys for e, ys in self.terms.items()}

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other) -> "QYSeries":
        if not isinstance(other, QYSeries):
            other = QYSeries.monomial(0, 0, other, order=self.order)
        return series_add(self, other)

    __radd__ = __add__

    def __neg__(self) -> "QYSeries":
        return self.scale(-1)

    def __sub__(self, other) -> "QYSeries":
        if not isinstance(other, QYSeries):
            other = QYSeries.monomial(0, 0, other, order=self.order)
        return series_add(self, other.scale(-1))

    def __rsub__(self, other) -> "QYSeries":
        return (-self) + other

    def __mul__(self, other) -> "QYSeries":
        if not isinstance(other, QYSeries):
            return self.scale(other)
        return series_mul(self, other)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "QYSeries":
        if e < 0:
            raise ValueError("use series_div_exact for negative powers")
        result = QYSeries.one(order=self.order)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def scale(self, c) -> "QYSeries":
        """Multiply by a scalar (rational or CycScalar)."""
        order = self.order
        if isinstance(c, CycScalar) and c.order != order:
            order = lcm(order, c.order)
        f = self.embed(order)
        cc = _as_coeff(c, order)
        if not any(cc):
            return QYSeries.zero(self.trunc, order)
        terms = {e: {d: vec_mul(v, cc, order) for d, v in ys.items()} for e, ys in f.terms.items()}
        return QYSeries(terms, order=order, qden=f.qden, trunc=f.trunc, slope=f.slope)

    def shift_q(self, q_exponent) -> "QYSeries":
        """Multiply by q^e (truncation moves with it)."""
        e = Fraction(q_exponent)
        den = lcm(self.qden, e.denominator)
        k = den // self.qden
        off = int(e * den)
        terms = {n * k + off: ys for n, ys in self.terms.items()}
        slope = None
        if self.slope is not None:
            sigma, r0 = self.slope
            slope = (sigma, max(Fraction(0), r0 - sigma * e))
        return QYSeries(terms, order=self.order, qden=den, trunc=self.trunc + e, slope=slope)

    def map_y(self, n: int) -> "QYSeries":
        """Substitute y -> y^n."""
        if n <= 0:
            raise ValueError("map_y needs a positive integer")
        terms = {e: {d * n: c for d, c in ys.items()} for e, ys in self.terms.items()}
        slope = None if self.slope is None else (self.slope[0] * n, self.slope[1] * n)
        return QYSeries(terms, order=self.order, qden=self.qden, trunc=self.trunc, slope=slope, _canonical=True)

    def __eq__(self, other) -> bool:
        """Equality of stored data on the common certified window."""
        if not isinstance(other, QYSeries):
            return NotImplemented
        return (self - other).is_zero()

    def identical(self, other: "QYSeries") -> bool:
        return (
            self.order == other.order
            and self.qden == other.qden
            and self.trunc == other.trunc
            and self.slope == other.slope
            and self.terms == other.terms
        )

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        parts = []
        for e, r, c in self.items():
            parts.append(f"({c.coeffs[0] if c.is_rational() else c})q^{e}y^{r}")
            if len(parts) > 8:
                parts.append("...")
                break
        return f"QYSeries({' + '.join(parts) or '0'} + O(q^{self.trunc}))"

    # -- serialization ----------------------------------------------------

    def to_json_obj(self) -> dict:
        return {
            "cyclotomic_order": self.order,
            "q_denominator": self.qden,
            "truncation": None if self.trunc == INF else _rat_str(self.trunc),
            "slope": None if self.slope is None else [_rat_str(x) for x in self.slope],
            "terms": [
                [e, [[d, [_rat_str(x) for x in c]] for d, c in ys.items()]] for e, ys in self.terms.items()
            ],
        }

    @classmethod
    def from_json_obj(cls, obj: Mapping) -> "QYSeries":
        order = int(obj["cyclotomic_order"])
        terms: Terms = {}
        for e, ys in obj["terms"]:
            terms[int(e)] = {int(d): tuple(norm_rational(Fraction(x)) for x in c) for d, c in ys}
        t = obj["truncation"]
        slope = obj.get("slope")
        return cls(
            terms,
            order=order,
            qden=int(obj["q_denominator"]),
            trunc=INF if t is None else Fraction(t),
            slope=None if slope is None else tuple(Fraction(x) for x in slope),
        )

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj(), separators=(",", ":"))

    @classmethod
    def from_json(cls, text: str) -> "QYSeries":
        return cls.from_json_obj(json.loads(text))


def _rat_str(x) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def _common(f: QYSeries, g: QYSeries) -> Tuple[int, int, Terms, Terms]:
    order = lcm(f.order, g.order)
    den = lcm(f.qden, g.qden)
    f, g = f.embed(order), g.embed(order)
    return order, den, f._rescale(den), g._rescale(den)


def _unify_slopes(f: QYSeries, g: QYSeries) -> Tuple[Fraction, Fraction, Fraction]:
    """Lift both certificates to the larger slope; returns (sigma, r0_f, r0_g).

    Raising sigma to sigma' costs (sigma' - sigma) * max(0, -v) in r0, where v
    is the certified valuation, so the lifted bound stays valid at poles.
    """
    (sf, rf), (sg, rg) = f.slope, g.slope
    s = max(sf, sg)

    def lift(series, s0, r):
        if s0 == s:
            return r
        v = series.valuation()
        neg = Fraction(0) if v == INF or v >= 0 else -Fraction(v)
        return r + (s - s0) * neg

    return s, lift(f, sf, rf), lift(g, sg, rg)


def series_add(f: QYSeries, g: QYSeries) -> QYSeries:
    order, den, a, b = _common(f, g)
    terms: Terms = {e: dict(ys) for e, ys in a.items()}
    for e, ys in b.items():
        terms[e] = _ypoly_add(terms[e], ys) if e in terms else dict(ys)
    slope = None
    if f.slope is not None and g.slope is not None:
        s, rf, rg = _unify_slopes(f, g)
        slope = (s, max(rf, rg))
    return QYSeries(terms, order=order, qden=den, trunc=min(f.trunc, g.trunc), slope=slope)


def series_mul(f: QYSeries, g: QYSeries) -> QYSeries:
    order, den, a, b = _common(f, g)
    vf, vg = f.valuation(), g.valuation()
    trunc = min(f.trunc + vg, g.trunc + vf)
    limit = trunc * den
    out: Dict[int, Dict[int, object]] = {}
    flat = totient(order) == 1
    for ea, ya in a.items():
        for eb, yb in b.items():
            e = ea + eb
            if e >= limit:
                break
            acc = out.setdefault(e, {})
            if flat:
                for da, (ca,) in ya.items():
                    for db, (cb,) in yb.items():
                        d = da + db
                        acc[d] = acc.get(d, 0) + ca * cb
            else:
                for da, ca in ya.items():
                    for db, cb in yb.items():
                        d = da + db
                        p = vec_mul(ca, cb, order)
                        acc[d] = vec_add(acc[d], p) if d in acc else p
    if flat:
        terms: Terms = {e: {d: (norm_rational(c),) for d, c in ys.items() if c} for e, ys in out.items()}
    else:
        terms = out  # type: ignore[assignment]
    slope = None
    if f.slope is not None and g.slope is not None:
        s, rf, rg = _unify_slopes(f, g)
        slope = (s, rf + rg)
    return QYSeries(terms, order=order, qden=den, trunc=trunc, slope=slope)


def series_div_exact(f: QYSeries, g: QYSeries, slope: Slope = None) -> QYSeries:
    """Exact quotient h with g*h = f on the certified window.

    The quotient has no slope certificate unless one is supplied; a supplied
    certificate is checked against every computed term.
    """
    if g.is_zero():
        raise ZeroDivisionError("division by a series with no certified terms")
    order, den, a, b = _common(f, g)
    vg_num = next(iter(b))
    lead = b[vg_num]
    vg = Fraction(vg_num, den)
    vf = f.valuation()
    if vf == INF:
        return QYSeries.zero(INF, order)
    vh = vf - vg
    trunc = min(f.trunc - vg, g.trunc - vg + vh)
    limit = trunc * den
    rem: Terms = {e: dict(ys) for e, ys in a.items()}
    quot: Terms = {}
    e = int(vh * den)
    if limit == INF:
        # exact inputs: the quotient is a polynomial or does not exist
        limit = max(a) - vg_num + 1
    while e < limit:
        target = e + vg_num
        ys = rem.pop(target, None)
        if ys:
            h = _ypoly_divexact(ys, lead, order)
            if h is None:
                raise NotDivisible(Fraction(target, den))
            quot[e] = h
            for eb, yb in b.items():
                if eb == vg_num:
                    continue
                key = e + eb
                if key >= limit + vg_num:
                    break
                prod = _ypoly_mul(h, yb, order)
                neg = {d: tuple(-x for x in c) for d, c in prod.items()}
                cur = rem.get(key)
                upd = _ypoly_add(cur, neg) if cur else neg
                if upd:
                    rem[key] = upd
                else:
                    rem.pop(key, None)
        e += 1
    if trunc == INF and rem:
        raise NotDivisible(Fraction(min(rem), den))
    out = QYSeries(quot, order=order, qden=den, trunc=trunc)
    return out.with_slope(slope) if slope is not None else out


def substitute_y(f: QYSeries, beta: int, alpha: int, n: int) -> QYSeries:
    """Evaluate y^(1/2) -> zeta_{2n}^beta * q^(alpha/(2n)), i.e. z = (alpha*tau + beta)/n.

    Exponent alpha is used as given. The output truncation is sound for the
    certificate: an unstored term at e >= T lands at or above
    T*(1 - sigma*|alpha|/n) - |alpha|*r0/n.
    """
    if n < 1:
        raise ValueError("n must be positive")
    trunc: Trunc = f.trunc
    if alpha != 0:
        if f.slope is None:
            raise NoSlopeCertificate("substitution with alpha != 0 needs a slope certificate")
        sigma, r0 = f.slope
        s = sigma * abs(alpha) / n
        if s >= 1:
            raise NoSlopeCertificate(f"slope {sigma} too steep for alpha={alpha}, n={n}")
        if trunc != INF:
            trunc = Fraction(math.floor(trunc * (1 - s) - abs(alpha) * r0 / n))
    order = lcm(f.order, 2 * n)
    den = lcm(f.qden, 2 * n)
    k = den // f.qden
    step = den // (2 * n)
    limit = trunc * den
    g = f.embed(order)
    zstep = order // (2 * n)
    out: Dict[int, Coeff] = {}
    for e, ys in g.terms.items():
        for d, c in ys.items():
            ne = e * k + d * alpha * step
            if ne >= limit:
                continue
            if beta:
                c = vec_mul(c, zeta_power(order, d * beta * zstep), order)
            out[ne] = vec_add(out[ne], c) if ne in out else c
    terms = {e: {0: c} for e, c in out.items()}
    return QYSeries(terms, order=order, qden=den, trunc=trunc, slope=(0, 0))


def eval_y1(f: QYSeries) -> QYSeries:
    """Termwise y -> 1."""
    terms: Terms = {}
    for e, ys in f.terms.items():
        acc = None
        for c in ys.values():
            acc = c if acc is None else vec_add(acc, c)
        if acc is not None:
            terms[e] = {0: acc}
    return QYSeries(terms, order=f.order, qden=f.qden, trunc=f.trunc, slope=(0, 0))


def descend(f: QYSeries) -> QYSeries:
    """Re-express f over the smallest cyclotomic subfield containing its coefficients."""
    n = f.order
    for m in sorted(d for d in range(1, n + 1) if n % d == 0):
        if totient(m) == totient(n):
            break
        terms: Terms = {}
        ok = True
        for e, ys in f.terms.items():
            new = {}
            for d, c in ys.items():
                x = _solve_descent(c, m, n)
                if x is None:
                    ok = False
                    break
                new[d] = x
            if not ok:
                break
            terms[e] = new
        if ok:
            return QYSeries(terms, order=m, qden=f.qden, trunc=f.trunc, slope=f.slope, _canonical=True)
    return f


def _solve_descent(c: Coeff, m: int, n: int) -> Optional[Coeff]:
    from .linalg import solve_exact

    cols = [embed(tuple(int(i == j) for i in range(totient(m))), m, n) for j in range(totient(m))]
    matrix = [[Fraction(cols[j][i]) for j in range(len(cols))] for i in range(len(c))]
    sol = solve_exact(matrix, [Fraction(x) for x in c])
    if sol is None:
        return None
    return tuple(norm_rational(x) for x in sol)


def scalar_reduce(raw: Iterable[Rational], order: int) -> CycScalar:
    """Canonical residue of a rational polynomial in zeta_order."""
    return CycScalar(order, reduce_poly([Fraction(x) for x in raw], order))
