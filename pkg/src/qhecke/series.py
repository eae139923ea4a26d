"""Truncated Laurent series in q whose coefficients are Laurent polynomials in x.

A :class:`QSeries` stores a sparse table ``q-exponent -> {x-exponent -> coeff}``
together with two bounds: ``lo`` (no nonzero coefficient below it) and ``hi``
(every coefficient at an exponent ``<= hi`` is exact).  Coefficients are Python
ints, or :class:`fractions.Fraction` where a division by a non-unit integer
occurred.

All q-exponents are integers in units of ``1/den``; ``den`` is 1 except for the
few decomposition checks that need half-integral exponents.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Iterator

INF = math.inf

XPoly = dict  # x-exponent -> nonzero coefficient


class LatticeMismatch(ValueError):
    pass


class TruncationError(ValueError):
    """Requested order lies beyond what the inputs certify."""


class NonUnitError(ValueError):
    """Lowest coefficient is not a unit of the Laurent coefficient ring."""


class PoleError(ValueError):
    """A denominator 1 - w has w of valuation 0 and cannot be expanded."""


def _norm(c):
    if type(c) is Fraction and c.denominator == 1:
        return c.numerator
    return c


@dataclass(frozen=True)
class Monomial:
    """``sign * x**xexp * q**qexp`` with lattice-scaled integer exponents."""

    sign: int = 1
    xexp: int = 0
    qexp: int = 0

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise ValueError(f"monomial sign must be +1 or -1, got {self.sign}")

    def __mul__(self, other: Monomial) -> Monomial:
        return Monomial(self.sign * other.sign, self.xexp + other.xexp, self.qexp + other.qexp)

    def __truediv__(self, other: Monomial) -> Monomial:
        return Monomial(self.sign * other.sign, self.xexp - other.xexp, self.qexp - other.qexp)

    def __pow__(self, n: int) -> Monomial:
        return Monomial(self.sign ** (n % 2) if self.sign < 0 else 1, self.xexp * n, self.qexp * n)

    def __neg__(self) -> Monomial:
        return Monomial(-self.sign, self.xexp, self.qexp)

    def inverse(self) -> Monomial:
        return Monomial(self.sign, -self.xexp, -self.qexp)

    def __str__(self):
        parts = []
        if self.xexp:
            parts.append("x" if self.xexp == 1 else f"x^{self.xexp}")
        if self.qexp:
            parts.append("q" if self.qexp == 1 else f"q^{self.qexp}")
        body = "*".join(parts) or "1"
        return body if self.sign > 0 else "-" + body


def q_(k: int = 1) -> Monomial:
    return Monomial(1, 0, k)


X = Monomial(1, 1, 0)
ONE = Monomial(1, 0, 0)


class QSeries:
    """Immutable truncated series; see module docstring for the bounds."""

    __slots__ = ("_t", "lo", "hi", "den")

    def __init__(self, terms: dict, hi, den: int = 1, _clean: bool = True):
        if den not in (1, 2):
            raise ValueError("lattice denominator must be 1 or 2")
        if _clean:
            t = {}
            for n, p in terms.items():
                if n > hi:
                    continue
                p = {j: _norm(c) for j, c in p.items() if c}
                if p:
                    t[n] = p
        else:
            t = terms
        self._t = t
        self.hi = hi
        self.den = den
        self.lo = min(t) if t else hi
        if self.lo == INF:
            self.lo = 0

    # construction -----------------------------------------------------
    @classmethod
    def zero(cls, hi=INF, den: int = 1) -> QSeries:
        return cls({}, hi, den, _clean=False)

    @classmethod
    def constant(cls, c, hi=INF, den: int = 1) -> QSeries:
        return cls({0: {0: c}}, hi, den)

    @classmethod
    def monomial(cls, m: Monomial, hi=INF, den: int = 1, coeff=1) -> QSeries:
        return cls({m.qexp: {m.xexp: m.sign * coeff}}, hi, den)

    @classmethod
    def from_terms(cls, items: Iterable[tuple[int, int, object]], hi, den: int = 1) -> QSeries:
        """Accumulate ``(q-exponent, x-exponent, coeff)`` triples."""
        t: dict = {}
        for n, j, c in items:
            if n > hi:
                continue
            p = t.setdefault(n, {})
            p[j] = p.get(j, 0) + c
        return cls(t, hi, den)

    # access -----------------------------------------------------------
    def items(self) -> Iterator[tuple[int, XPoly]]:
        for n in sorted(self._t):
            yield n, self._t[n]

    def coeff(self, n: int) -> XPoly:
        if n > self.hi:
            raise TruncationError(f"coefficient of q^{n} requested but series is exact only to {self.hi}")
        return dict(self._t.get(n, {}))

    def is_pure_q(self) -> bool:
        return all(len(p) == 1 and 0 in p for p in self._t.values())

    def nterms(self) -> int:
        return sum(len(p) for p in self._t.values())

    def xdegree_profile(self) -> dict[int, int]:
        """Map q-exponent -> max |x-exponent| over the stored terms."""
        return {n: max(abs(j) for j in p) for n, p in self._t.items()}

    def is_integral(self) -> bool:
        return all(type(c) is int for p in self._t.values() for c in p.values())

    def truncate(self, N) -> QSeries:
        if N >= self.hi:
            return self
        return QSeries({n: p for n, p in self._t.items() if n <= N}, N, self.den, _clean=False)

    def with_hi(self, N) -> QSeries:
        """Same series, claimed exact only to ``N`` (``N`` must not exceed ``hi``)."""
        if N > self.hi:
            raise TruncationError(f"cannot extend exactness from {self.hi} to {N}")
        return self.truncate(N)

    # arithmetic -------------------------------------------------------
    def __add__(self, other) -> QSeries:
        if not isinstance(other, QSeries):
            other = QSeries.constant(other, den=self.den)
        return add(self, other)

    __radd__ = __add__

    def __neg__(self) -> QSeries:
        return QSeries({n: {j: -c for j, c in p.items()} for n, p in self._t.items()},
                       self.hi, self.den, _clean=False)

    def __sub__(self, other) -> QSeries:
        if not isinstance(other, QSeries):
            other = QSeries.constant(other, den=self.den)
        return add(self, -other)

    def __rsub__(self, other) -> QSeries:
        return (-self) + other

    def __mul__(self, other) -> QSeries:
        if isinstance(other, QSeries):
            return mul(self, other)
        if isinstance(other, Monomial):
            return scale(self, other)
        if not other:
            return QSeries.zero(self.hi, self.den)
        return QSeries({n: {j: _norm(c * other) for j, c in p.items()} for n, p in self._t.items()},
                       self.hi, self.den, _clean=False)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, QSeries):
            return NotImplemented
        return self.den == other.den and self.hi == other.hi and self._t == other._t

    def __hash__(self):
        return hash((self.hi, self.den, len(self._t)))

    def __repr__(self):
        return f"QSeries(lo={self.lo}, hi={self.hi}, den={self.den}, nterms={self.nterms()})"

    def __str__(self):
        return render_text(self)


def _check(a: QSeries, b: QSeries):
    if a.den != b.den:
        raise LatticeMismatch(f"lattice denominators differ: {a.den} vs {b.den}")


def add(a: QSeries, b: QSeries) -> QSeries:
    _check(a, b)
    hi = min(a.hi, b.hi)
    t = {n: dict(p) for n, p in a._t.items() if n <= hi}
    for n, p in b._t.items():
        if n > hi:
            continue
        acc = t.get(n)
        if acc is None:
            t[n] = dict(p)
            continue
        for j, c in p.items():
            v = acc.get(j, 0) + c
            if v:
                acc[j] = v
            else:
                acc.pop(j, None)
    return QSeries({n: p for n, p in t.items() if p}, hi, a.den, _clean=False)


def sum_series(series: Iterable[QSeries], hi=INF, den: int = 1) -> QSeries:
    """Sum many series at once; the result is exact to the smallest ``hi``."""
    t: dict = {}
    for s in series:
        if s.den != den:
            raise LatticeMismatch(f"lattice denominators differ: {s.den} vs {den}")
        hi = min(hi, s.hi)
        for n, p in s._t.items():
            acc = t.setdefault(n, {})
            for j, c in p.items():
                acc[j] = acc.get(j, 0) + c
    return QSeries(t, hi, den)


def mul(a: QSeries, b: QSeries) -> QSeries:
    """Cauchy product; exact to ``min(a.lo + b.hi, b.lo + a.hi)``."""
    _check(a, b)
    hi = min(a.lo + b.hi, b.lo + a.hi)
    if a.nterms() > b.nterms():
        a, b = b, a
    out: dict = {}
    bt = sorted(b._t.items())
    for n1, p1 in a._t.items():
        lim = hi - n1
        items1 = list(p1.items())
        for n2, p2 in bt:
            if n2 > lim:
                break
            acc = out.get(n1 + n2)
            if acc is None:
                acc = out[n1 + n2] = {}
            get = acc.get
            for j1, c1 in items1:
                for j2, c2 in p2.items():
                    k = j1 + j2
                    acc[k] = get(k, 0) + c1 * c2
    return QSeries(out, hi, a.den)


def scale(a: QSeries, m: Monomial, coeff=1) -> QSeries:
    """Multiply by ``coeff * m``; ``hi`` shifts by the q-exponent of ``m``."""
    s = m.sign * coeff
    t = {n + m.qexp: {j + m.xexp: _norm(c * s) for j, c in p.items()} for n, p in a._t.items()}
    return QSeries(t, a.hi + m.qexp, a.den, _clean=False)


def mul_one_minus(a: QSeries, m: Monomial) -> QSeries:
    """``a * (1 - m)``."""
    return add(a, -scale(a, m))


def div_one_minus(a: QSeries, m: Monomial, coeff=1) -> QSeries:
    """``a / (1 - coeff*m)`` expanded by the valuation of ``m``.

    Positive valuation expands geometrically; negative valuation uses
    ``1/(1-w) = -w^-1/(1-w^-1)``.  At valuation zero only a constant
    ``w != 1`` is admissible.
    """
    w = m.sign * coeff
    if m.qexp > 0:
        if a.hi == INF:
            raise TruncationError("geometric expansion of an exact series needs a finite order")
        d, e = m.qexp, m.xexp
        out: dict = {}
        lo = a.lo
        for n in range(lo, int(a.hi) + 1):
            src = a._t.get(n)
            prev = out.get(n - d)
            if src is None and prev is None:
                continue
            acc = dict(src) if src else {}
            if prev:
                for j, c in prev.items():
                    k = j + e
                    v = acc.get(k, 0) + w * c
                    if v:
                        acc[k] = v
                    else:
                        acc.pop(k, None)
            if acc:
                out[n] = acc
        return QSeries(out, a.hi, a.den)
    if m.qexp < 0:
        # -w^{-1}: coefficient 1/coeff keeps the scale rational
        inv = Monomial(m.sign, -m.xexp, -m.qexp)
        pre = Fraction(1, coeff) if coeff != 1 else 1
        return div_one_minus(scale(a, -inv, pre), inv, pre)
    if m.xexp != 0 or w == 1:
        raise PoleError(f"denominator 1 - ({w})*{m} has a pole at order 0")
    return a * Fraction(1, 1 - w)


def invert(a: QSeries, N) -> QSeries:
    """Reciprocal of ``a`` exact to order ``N``.

    The coefficient at ``a.lo`` must be a single x-monomial.  Needs
    ``a.hi >= N + 2*a.lo``.
    """
    if not a._t:
        raise NonUnitError("cannot invert the zero series")
    L = a.lo
    lead = a._t[L]
    if len(lead) != 1:
        raise NonUnitError(f"lowest coefficient {render_xpoly(lead)} is not a monomial")
    (e, c), = lead.items()
    need = N + 2 * L
    if a.hi < need:
        raise TruncationError(f"invert to order {N} needs input exact to {need}, have {a.hi}")
    cinv = c if c in (1, -1) else Fraction(1, 1) / c
    # normalized u = a / (c x^e q^L) = 1 + sum_{n>=1} u_n q^n
    u = {n - L: {j - e: c0 * cinv for j, c0 in p.items()} for n, p in a._t.items() if n - L > 0}
    top = N + L
    v: dict = {0: {0: 1}}
    for n in range(1, int(top) + 1):
        acc: dict = {}
        for k, uk in u.items():
            if k > n:
                continue
            vk = v.get(n - k)
            if not vk:
                continue
            for j1, c1 in uk.items():
                for j2, c2 in vk.items():
                    jj = j1 + j2
                    acc[jj] = acc.get(jj, 0) - c1 * c2
        acc = {j: _norm(x) for j, x in acc.items() if x}
        if acc:
            v[n] = acc
    t = {n - L: {j - e: _norm(x * cinv) for j, x in p.items()} for n, p in v.items()}
    return QSeries(t, N, a.den)


def subst_x_inverse(a: QSeries) -> QSeries:
    return QSeries({n: {-j: c for j, c in p.items()} for n, p in a._t.items()},
                   a.hi, a.den, _clean=False)


def negate_x(a: QSeries) -> QSeries:
    """Substitute ``x -> -x``."""
    return QSeries({n: {j: (-c if j % 2 else c) for j, c in p.items()} for n, p in a._t.items()},
                   a.hi, a.den, _clean=False)


def subst_x_constant(a: QSeries, c: int) -> QSeries:
    """Evaluate every coefficient at ``x = c`` with ``c`` in {-1, +1}."""
    if c not in (1, -1):
        raise ValueError("x may only be specialized to +1 or -1")
    t = {}
    for n, p in a._t.items():
        v = sum(x if (c == 1 or j % 2 == 0) else -x for j, x in p.items())
        if v:
            t[n] = {0: v}
    return QSeries(t, a.hi, a.den, _clean=False)


def subst_q_power(a: QSeries, M: int) -> QSeries:
    if M < 1:
        raise ValueError("q -> q^M needs M >= 1")
    return QSeries({n * M: dict(p) for n, p in a._t.items()}, a.hi * M, a.den, _clean=False)


def shift_order_needed(d: int, Nout, slope: Fraction, const) -> int:
    """Input order sufficient for :func:`subst_x_shift` under ``|xexp| <= slope*n + const``."""
    d = abs(d)
    if d == 0:
        return Nout
    room = 1 - d * Fraction(slope)
    if room <= 0:
        raise ValueError("x-degree slope too large for this shift")
    return math.ceil((Nout + d * const) / room)


def xdegree_constant(a: QSeries, slope: Fraction) -> int:
    """Smallest ``c`` with ``|xexp| <= slope*n + c`` on the stored terms."""
    c = 0
    for n, p in a._t.items():
        c = max(c, math.ceil(max(abs(j) for j in p) - Fraction(slope) * n))
    return c


def subst_x_shift(a: QSeries, d: int, Nout, slope: Fraction, const) -> QSeries:
    """Substitute ``x -> q^d x``, exact to ``Nout``.

    The caller certifies ``|xexp| <= slope*n + const`` for every term of ``a``
    (including those above ``a.hi``); the input must then be exact to
    :func:`shift_order_needed`.
    """
    need = shift_order_needed(d, Nout, slope, const)
    if a.hi < need:
        raise TruncationError(f"x -> q^{d} x to order {Nout} needs input exact to {need}, have {a.hi}")
    t: dict = {}
    for n, p in a._t.items():
        for j, c in p.items():
            m = n + d * j
            if m > Nout:
                continue
            t.setdefault(m, {})[j] = c
    return QSeries(t, Nout, a.den, _clean=False)


def div_xpoly_exact(a: QSeries, poly: XPoly) -> QSeries:
    """Divide every coefficient by the Laurent polynomial ``poly`` (remainder must vanish)."""
    jl, jh = min(poly), max(poly)
    lead = poly[jh]
    t = {}
    for n, p in a._t.items():
        rem = dict(p)
        floor = min(rem) - jl
        quo = {}
        while rem and max(rem) - jh >= floor:
            top = max(rem)
            qj = top - jh
            qc = Fraction(rem[top]) / lead
            quo[qj] = _norm(qc)
            for j, c in poly.items():
                k = qj + j
                v = rem.get(k, 0) - qc * c
                if v:
                    rem[k] = v
                else:
                    rem.pop(k, None)
        if rem:
            raise ArithmeticError(f"coefficient of q^{n} not divisible by {render_xpoly(poly)}")
        t[n] = quo
    return QSeries(t, a.hi, a.den)


def coeff(a: QSeries, n: int) -> XPoly:
    return a.coeff(n)


def eq_to_order(a: QSeries, b: QSeries, N):
    """Compare coefficients at q-exponents ``<= N``.

    Returns ``(True, None)`` or ``(False, (qexp, xexp, a_value, b_value))`` for
    the least mismatch.
    """
    _check(a, b)
    if N > min(a.hi, b.hi):
        raise TruncationError(f"comparison to {N} but operands are exact to {a.hi} and {b.hi}")
    for n in sorted(set(a._t) | set(b._t)):
        if n > N:
            break
        pa, pb = a._t.get(n, {}), b._t.get(n, {})
        if pa != pb:
            for j in sorted(set(pa) | set(pb)):
                va, vb = pa.get(j, 0), pb.get(j, 0)
                if va != vb:
                    return False, (n, j, va, vb)
    return True, None


# lazily built factors ------------------------------------------------------

@dataclass(frozen=True)
class Factor:
    """A series known only through a certified valuation bound and a builder.

    ``build(N)`` must return the series exact to at least ``N``.
    """

    lo: int
    build: Callable[[int], QSeries]

    @classmethod
    def of(cls, s: QSeries) -> Factor:
        def build(N, s=s):
            if s.hi < N:
                raise TruncationError(f"fixed factor exact only to {s.hi}, {N} requested")
            return s
        return cls(s.lo, build)

    @classmethod
    def mono(cls, m: Monomial, coeff=1, den: int = 1) -> Factor:
        return cls(m.qexp, lambda N: QSeries.monomial(m, INF, den, coeff))


def product(factors: list[Factor], N, den: int = 1) -> QSeries:
    """Product of factors, each built to the order the mul contract requires."""
    total = sum(f.lo for f in factors)
    if factors and total > N:
        return QSeries.zero(N, den)
    out = None
    for f in factors:
        s = f.build(N - (total - f.lo))
        if s.nterms() and s.lo < f.lo:
            raise AssertionError(f"factor realized lo {s.lo} below its certified bound {f.lo}")
        out = s if out is None else mul(out, s)
    if out is None:
        return QSeries.constant(1, INF, den)
    if out.hi < N:
        raise TruncationError(f"product reached only order {out.hi} < {N}")
    return out.truncate(N)


# rendering and serialization ----------------------------------------------

def _fmt_exp(e: int, den: int) -> str:
    f = Fraction(e, den)
    return str(f.numerator) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"


def _fmt_coeff(c) -> str:
    c = Fraction(c)
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def render_xpoly(p: XPoly) -> str:
    if not p:
        return "0"
    out = []
    for j in sorted(p):
        c = Fraction(p[j])
        neg = c < 0
        mag = -c if neg else c
        if j == 0:
            body = _fmt_coeff(mag)
        else:
            xs = "x" if j == 1 else f"x^{j}"
            body = xs if mag == 1 else f"{_fmt_coeff(mag)}*{xs}"
        if not out:
            out.append(("-" if neg else "") + body)
        else:
            out.append((" - " if neg else " + ") + body)
    return "".join(out)


def render_text(a: QSeries, N=None) -> str:
    """One line ``q^n: <coefficient>`` per nonzero q-exponent up to ``N``."""
    lines = []
    for n, p in a.items():
        if N is not None and n > N:
            break
        lines.append(f"q^{_fmt_exp(n, a.den)}: {render_xpoly(p)}")
    return "\n".join(lines)


def to_jsonable(a: QSeries) -> dict:
    terms = []
    for n, p in a.items():
        row = []
        for j in sorted(p):
            c = Fraction(p[j])
            row.append([j, c.numerator, c.denominator])
        terms.append([n, row])
    hi = None if a.hi == INF else int(a.hi)
    return {"den": a.den, "lo": int(a.lo), "hi": hi, "terms": terms}


def from_jsonable(d: dict) -> QSeries:
    hi = INF if d["hi"] is None else d["hi"]
    t = {n: {j: _norm(Fraction(num, dn)) for j, num, dn in row} for n, row in d["terms"]}
    return QSeries(t, hi, d.get("den", 1))


def dumps(a: QSeries) -> str:
    return json.dumps(to_jsonable(a), separators=(",", ":"))


def loads(s: str) -> QSeries:
    return from_jsonable(json.loads(s))
