"""Indefinite lattice sums: Hecke-type double sums, triple sums, Appell-Lerch
series, rational-denominator double sums and the two decomposition formulas
that rewrite a double sum through theta functions."""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from fractions import Fraction

from .blocks import (
    false_theta_factor,
    quad_min,
    theta,
    theta_factor,
    theta_inverse_factor,
    theta_lo,
    theta_vanishes,
    window,
)
from .series import (
    INF,
    X as XMON,
    Factor,
    LatticeMismatch,
    Monomial,
    PoleError,
    QSeries,
    div_one_minus,
    mul,
    mul_one_minus,
    product,
    sum_series,
)


@dataclass(frozen=True)
class HeckeParams:
    a: int
    b: int
    c: int

    def __post_init__(self):
        if min(self.a, self.b, self.c) < 1:
            raise ValueError(f"Hecke parameters must be positive, got {(self.a, self.b, self.c)}")

    @property
    def D(self) -> int:
        return self.b * self.b - self.a * self.c


def _params(p) -> HeckeParams:
    return p if isinstance(p, HeckeParams) else HeckeParams(*p)


def _signed(m: Monomial, k: int) -> int:
    """Sign of ``m**k`` (only the sign; exponents handled separately)."""
    return -1 if (m.sign < 0 and k % 2) else 1


# quadrant enumeration ------------------------------------------------------------

def quadrant_points(A, B, C, u, v, N, positive: bool):
    """Yield ``(r, s, E)`` with ``E = A*C(r,2) + B*r*s + C*C(s,2) + u*r + v*s <= N``.

    ``positive`` selects ``r, s >= 0``; otherwise ``r, s < 0``.  The cross term
    is nonnegative on both quadrants, so dropping it gives independent convex
    bounds for ``r`` and ``s``.
    """
    lo, hi = (0, None) if positive else (None, -1)
    min_s = quad_min(C, v, 0, lo, hi)
    for r in window(A, u, min_s, N, lo, hi):
        base = A * (r * (r - 1) // 2) + u * r
        for s in window(C, v + B * r, base, N, lo, hi):
            yield r, s, base + B * r * s + C * (s * (s - 1) // 2) + v * s


def quadrant_lo(A, B, C, u, v, positive: bool):
    lo, hi = (0, None) if positive else (None, -1)
    return quad_min(A, u, quad_min(C, v, 0, lo, hi), lo, hi)


def hecke_lo(p, X: Monomial, Y: Monomial, M: int = 1, den: int = 1):
    """Certified lower bound for the valuation of :func:`hecke_f`."""
    p = _params(p)
    s = M * den
    args = (p.a * s, p.b * s, p.c * s, X.qexp, Y.qexp)
    return min(quadrant_lo(*args, True), quadrant_lo(*args, False))


def hecke_f(p, X: Monomial, Y: Monomial, M: int, N, den: int = 1) -> QSeries:
    """``f_{a,b,c}(X, Y; q^M)`` exact to ``N``."""
    p = _params(p)
    s = M * den
    A, B, C = p.a * s, p.b * s, p.c * s
    items = []
    for positive, w in ((True, 1), (False, -1)):
        for r, t, E in quadrant_points(A, B, C, X.qexp, Y.qexp, N, positive):
            c = w * (-1 if (r + t) % 2 else 1) * _signed(X, r) * _signed(Y, t)
            items.append((E, X.xexp * r + Y.xexp * t, c))
    return QSeries.from_terms(items, N, den)


def hecke_factor(p, X: Monomial, Y: Monomial, M: int = 1, den: int = 1) -> Factor:
    return Factor(hecke_lo(p, X, Y, M, den), lambda N: hecke_f(p, X, Y, M, N, den))


# triple sums ---------------------------------------------------------------------

def _octant(coefs, lin, N, positive: bool):
    a, b, c, d, e, f = coefs
    u, v, w = lin
    lo, hi = (0, None) if positive else (None, -1)
    min_t = quad_min(f, w, 0, lo, hi)
    min_s = quad_min(c, v, 0, lo, hi)
    for r in window(a, u, min_s + min_t, N, lo, hi):
        br = a * (r * (r - 1) // 2) + u * r
        for s in window(c, v + b * r, br + min_t, N, lo, hi):
            brs = br + b * r * s + c * (s * (s - 1) // 2) + v * s
            for t in window(f, w + d * r + e * s, brs, N, lo, hi):
                yield r, s, t, brs + (d * r + e * s) * t + f * (t * (t - 1) // 2) + w * t


def triple_lo(coefs, X, Y, Z, M: int = 1, den: int = 1):
    a, b, c, d, e, f = (k * M * den for k in coefs)
    out = INF
    for lo, hi in ((0, None), (None, -1)):
        out = min(out, quad_min(a, X.qexp, 0, lo, hi) + quad_min(c, Y.qexp, 0, lo, hi)
                  + quad_min(f, Z.qexp, 0, lo, hi))
    return out


def triple_g(coefs, X: Monomial, Y: Monomial, Z: Monomial, M: int, N, den: int = 1) -> QSeries:
    """``g_{a,b,c,d,e,f}(X, Y, Z; q^M)``: both octants enter with weight +1."""
    if len(coefs) != 6 or min(coefs) < 1:
        raise ValueError(f"triple-sum parameters must be six positive integers, got {coefs}")
    scaled = tuple(k * M * den for k in coefs)
    items = []
    for positive in (True, False):
        for r, s, t, E in _octant(scaled, (X.qexp, Y.qexp, Z.qexp), N, positive):
            c = (-1 if (r + s + t) % 2 else 1) * _signed(X, r) * _signed(Y, s) * _signed(Z, t)
            items.append((E, X.xexp * r + Y.xexp * s + Z.xexp * t, c))
    return QSeries.from_terms(items, N, den)


def triple_factor(coefs, X, Y, Z, M: int = 1, den: int = 1) -> Factor:
    return Factor(triple_lo(coefs, X, Y, Z, M, den), lambda N: triple_g(coefs, X, Y, Z, M, N, den))


# Appell-Lerch series ------------------------------------------------------------

def _appell_m_sum(Xm: Monomial, Z: Monomial, A: int, N, den: int) -> QSeries:
    # sum_r (-1)^r Q^{C(r,2)} Z^r / (1 - Q^{r-1} X Z),  Q = q^(A/den)
    XZ = Xm * Z
    lines = []
    for r in window(A, Z.qexp, 0, N):
        e = A * (r * (r - 1) // 2) + Z.qexp * r
        c = (-1 if r % 2 else 1) * _signed(Z, r)
        line = QSeries({e: {Z.xexp * r: c}}, N, den)
        lines.append(div_one_minus(line, XZ * Monomial(1, 0, A * (r - 1))))
    return sum_series(lines, N, den).truncate(N)


def appell_m_factor(Xm: Monomial, Z: Monomial, M: int, den: int = 1) -> Factor:
    """``m(X, q^M, Z)`` as a lazily built factor."""
    A = M * den
    XZ = Xm * Z
    if XZ.xexp == 0 and XZ.sign > 0 and XZ.qexp % A == 0:
        raise PoleError(f"m(X, q^{M}, Z) has a pole: X*Z = {XZ} is an integral power of q^{M}")
    if theta_vanishes(Z, M, den):
        raise PoleError(f"m(X, q^{M}, Z) is undefined: Theta({Z}; q^{M}) vanishes")
    # each line has valuation >= its numerator exponent
    s_lo = quad_min(A, Z.qexp, 0)
    inv = theta_inverse_factor(Z, M, den)
    S = Factor(s_lo, lambda n: _appell_m_sum(Xm, Z, A, n, den))
    return Factor(s_lo + inv.lo, lambda n: product([S, inv], n, den))


def appell_m(Xm: Monomial, Z: Monomial, M: int, N, den: int = 1) -> QSeries:
    return appell_m_factor(Xm, Z, M, den).build(N).truncate(N)


# rational-denominator double sums -------------------------------------------------

@dataclass(frozen=True)
class Denominator:
    """``1 - sign * x^xexp * q^(kappa*r + lam)``."""

    sign: int
    xexp: int
    kappa: int
    lam: int

    def monomial(self, r: int) -> Monomial:
        return Monomial(self.sign, self.xexp, self.kappa * r + self.lam)


@dataclass(frozen=True)
class AppellShape:
    """``sum sg(r,s) (-1)^(sr*r + ss*s) numer * q^Q(r,s) / prod(denominators)``.

    ``Q = alpha*C(r,2) + beta*r*s + gamma*C(s,2) + delta*r + eps*s + const`` and
    each numerator term ``(coef, dr, ds, d0)`` multiplies by
    ``coef * q^(dr*r + ds*s + d0)``.
    """

    alpha: int
    beta: int
    gamma: int
    delta: int
    eps: int
    const: int = 0
    sign_r: int = 1
    sign_s: int = 1
    numer: tuple = ((1, 0, 0, 0),)
    dens: tuple = (Denominator(1, 1, 1, 0),)
    name: str = field(default="", compare=False)

    def __post_init__(self):
        if self.beta < 1 or self.alpha < 1 or self.gamma < 1:
            raise ValueError(f"shape {self.name or ''} needs positive quadratic coefficients")

    def split(self) -> list[AppellShape]:
        """One single-term shape per numerator monomial."""
        return [replace(self, delta=self.delta + dr, eps=self.eps + ds, const=self.const + d0,
                        numer=((coef, 0, 0, 0),))
                for coef, dr, ds, d0 in self.numer]

    def shift_x(self, d: int) -> AppellShape:
        """The shape of ``S(q^d x)``: x-denominators pick up ``q^(d*xexp)``."""
        return replace(self, dens=tuple(replace(dn, lam=dn.lam + d * dn.xexp) for dn in self.dens))

    def pole_lines(self) -> list[int]:
        """Rows ``r`` whose x-denominator is exactly ``1 - x``."""
        out = []
        for dn in self.dens:
            if dn.xexp != 0 and dn.sign > 0 and dn.lam % dn.kappa == 0:
                out.append(-dn.lam // dn.kappa)
        return out


def _shape_line(sh: AppellShape, r: int, N, quadrant: int, skip_pole: bool = False) -> QSeries:
    """Row ``r`` of a single-term shape on one quadrant, exact to ``N``."""
    (coef, _, _, _), = sh.numer
    shift = 0
    dmons = []
    for dn in sh.dens:
        m = dn.monomial(r)
        if skip_pole and m.xexp != 0 and m.qexp == 0 and m.sign > 0:
            continue
        dmons.append(m)
        if m.qexp < 0:
            shift -= m.qexp
    limit = N - shift
    lo, hi = (0, None) if quadrant > 0 else (None, -1)
    base = sh.alpha * (r * (r - 1) // 2) + sh.delta * r + sh.const
    sr = -1 if (sh.sign_r and r % 2) else 1
    items = []
    for s in window(sh.gamma, sh.eps + sh.beta * r, base, limit, lo, hi):
        E = base + sh.beta * r * s + sh.gamma * (s * (s - 1) // 2) + sh.eps * s
        c = quadrant * coef * sr * (-1 if (sh.sign_s and s % 2) else 1)
        items.append((E, 0, c))
    line = QSeries.from_terms(items, N)
    for m in dmons:
        line = div_one_minus(line, m)
    return line.truncate(N)


def _shape_rows(sh: AppellShape, N):
    """Yield ``(r, quadrant)`` for every row that can reach order ``N``."""
    for quadrant, (lo, hi) in ((1, (0, None)), (-1, (None, -1))):
        min_s = quad_min(sh.gamma, sh.eps, 0, lo, hi)
        for r in window(sh.alpha, sh.delta, sh.const + min_s, N, lo, hi):
            yield r, quadrant


def shape_lo(shape: AppellShape):
    """Certified lower bound for the valuation of the shape's double sum."""
    out = INF
    for sh in shape.split():
        for lo, hi in ((0, None), (None, -1)):
            out = min(out, quad_min(sh.alpha, sh.delta, sh.const + quad_min(sh.gamma, sh.eps, 0, lo, hi), lo, hi))
    return out


def appell_double(shape: AppellShape, N) -> QSeries:
    """The shape's double sum exact to ``N``; a ``1 - x`` row raises :class:`PoleError`."""
    lines = []
    for sh in shape.split():
        for r, quadrant in _shape_rows(sh, N):
            lines.append(_shape_line(sh, r, N, quadrant))
    return sum_series(lines, N).truncate(N)


def appell_parts(shape: AppellShape, N):
    """Split into (regular rows, pole row with its ``1 - x`` removed), both exact to ``N``."""
    poles = set(shape.pole_lines())
    if len(poles) > 1:
        raise ValueError("shape has more than one pole row")
    rest, pole = [], []
    for sh in shape.split():
        for r, quadrant in _shape_rows(sh, N):
            if r in poles:
                pole.append(_shape_line(sh, r, N, quadrant, skip_pole=True))
            else:
                rest.append(_shape_line(sh, r, N, quadrant))
    return sum_series(rest, N).truncate(N), sum_series(pole, N).truncate(N)


def theta_x_closed(N) -> QSeries:
    """``(qx)_inf (q/x)_inf (q)_inf = Theta(x;q)/(1-x)``."""
    out = QSeries.constant(1, N)
    for k in range(1, N + 1):
        out = mul_one_minus(out, Monomial(1, 1, k))
        out = mul_one_minus(out, Monomial(1, -1, k))
        out = mul_one_minus(out, Monomial(1, 0, k))
    return out


def regularized_appell(shape: AppellShape, N, clearing: str = "one_minus_x") -> QSeries:
    """``(1-x) S`` or ``Theta(x;q) S`` with the ``1 - x`` row summed in closed form."""
    if not shape.pole_lines():
        raise ValueError("shape has no 1 - x row to regularize")
    rest, pole = appell_parts(shape, N)
    if clearing == "one_minus_x":
        return (mul_one_minus(rest, XMON) + pole).truncate(N)
    if clearing == "theta_x":
        th = theta(XMON, 1, N - min(rest.lo, 0))
        closed = theta_x_closed(N - min(pole.lo, 0))
        return (mul(th, rest) + mul(pole, closed)).truncate(N)
    raise ValueError(f"unknown clearing {clearing!r}")


def regularized_lo(shape: AppellShape) -> int:
    return min(shape_lo(shape), 0) if shape.pole_lines() else shape_lo(shape)


# decomposition right-hand sides -------------------------------------------------

def _lattice(k, M: int, den: int) -> int:
    v = Fraction(k) * M * den
    if v.denominator != 1:
        raise LatticeMismatch(f"exponent {k} is not on the 1/{den} lattice")
    return int(v)


def _C2(n) -> Fraction:
    n = Fraction(n)
    return n * (n - 1) / 2


def _mpow(m: Monomial, k) -> Monomial:
    k = Fraction(k)
    if k.denominator != 1:
        raise LatticeMismatch(f"non-integral power {k} of a monomial argument")
    return m ** int(k)


def _qm(k, M, den) -> Monomial:
    return Monomial(1, 0, _lattice(k, M, den))


def _shifted_theta_terms(p: HeckeParams, X: Monomial, Y: Monomial, M: int, den: int):
    """The prefactors ``(-Y)^i q^{cC(i,2)} Theta(q^{bi} X; q^a)`` of both i-sums.

    Yields ``(which, i, prefactor monomial, theta argument, theta modulus, m-argument)``.
    """
    a, b, c, D = p.a, p.b, p.c, p.D
    nX, nY = -X, -Y
    for i in range(a):
        pre = _mpow(nY, i) * _qm(c * _C2(i), M, den)
        targ = _qm(b * i, M, den) * X
        marg = -(_qm(a * _C2(b + 1) - c * _C2(a + 1) - i * D, M, den) * _mpow(nY, a) / _mpow(nX, b))
        yield "a", i, pre, targ, a, marg
    for i in range(c):
        pre = _mpow(nX, i) * _qm(a * _C2(i), M, den)
        targ = _qm(b * i, M, den) * Y
        marg = -(_qm(c * _C2(b + 1) - a * _C2(c + 1) - i * D, M, den) * _mpow(nX, c) / _mpow(nY, b))
        yield "c", i, pre, targ, c, marg


@dataclass
class MZParts:
    gpart: QSeries
    thetapart: QSeries
    vanished: list  # (which, i) whose theta prefactor is identically zero

    @property
    def total(self) -> QSeries:
        return self.gpart + self.thetapart


def _theta_part_factors(p: HeckeParams, X: Monomial, Y: Monomial, M: int, den: int):
    """Factor lists whose products sum to ``vartheta_{a,b,c}(X, Y; q^M)``."""
    a, b, c, D = p.a, p.b, p.c, p.D
    nX, nY = -X, -Y
    fc, fa = Fraction(c % 2, 2), Fraction(a % 2, 2)
    out = []
    for ds in range(b):
        for es in range(b):
            d, e = ds + fc, es + fa
            al, be = d - Fraction(c, 2), e + Fraction(a, 2)
            pre = _qm(a * _C2(al) + b * al * be + c * _C2(be), M, den) * _mpow(nX, al) * _mpow(nY, be)
            z3 = _qm(D * (d + e) + a * c - Fraction(b * (a + c), 2), M, den) * _mpow(nX, b - c) * _mpow(nY, b - a)
            z4 = _qm(D * e + Fraction(a * (c - b), 2), M, den) * _mpow(nX, b) * _mpow(nY, -a)
            z5 = _qm(D * d + Fraction(c * (a - b), 2), M, den) * _mpow(nY, b) * _mpow(nX, -c)
            tail = [
                Factor(0, lambda n, s=b * D * M: _poch3(n, s, den)),
                theta_factor(z3, b * D * M, den),
                theta_inverse_factor(z4, b * D * M, den),
                theta_inverse_factor(z5, b * D * M, den),
            ]
            for f in range(b):
                m1 = pre * _qm(a * b * b * _C2(f) + (a * (b * d + b * b + c * e) - Fraction(a * c * (b + 1), 2)) * f,
                               M, den) * _mpow(nY, a * f)
                z1 = -(_qm(c * (a * d + b * e + Fraction(a * (b - 1), 2) + a * b * f), M, den) * _mpow(nX, c))
                z2 = -(_qm(a * ((d + Fraction(b * (b + 1), 2) + b * f) * D + Fraction(c * (a - b), 2)), M, den)
                       * _mpow(nX, -a * c) * _mpow(nY, a * b))
                out.append([Factor.mono(m1, 1, den), theta_factor(z1, c * b * b * M, den),
                            theta_factor(z2, a * b * b * D * M, den)] + tail)
    return out


def _poch3(N, step, den):
    base = Monomial(1, 0, step * den)
    out = QSeries.constant(1, N, den)
    k = 0
    while base.qexp * (k + 1) <= N:
        out = mul_one_minus(out, Monomial(1, 0, base.qexp * (k + 1)))
        k += 1
    return mul(mul(out, out), out).truncate(N)


def mz_decomposition_parts(p, X: Monomial, Y: Monomial, M: int, N, den: int = 1) -> MZParts:
    """Appell-Lerch part and theta-quotient part of an indefinite (D > 0) double sum."""
    p = _params(p)
    if p.D <= 0:
        raise ValueError(f"decomposition into Appell-Lerch series needs D > 0, got D = {p.D}")
    a, c, D = p.a, p.c, p.D
    minus_one = Monomial(-1, 0, 0)
    gterms, vanished = [], []
    for which, i, pre, targ, mod, marg in _shifted_theta_terms(p, X, Y, M, den):
        if theta_vanishes(targ, mod * M, den):
            vanished.append((which, i))
            continue
        mmod = (a if which == "a" else c) * D * M
        gterms.append(product([Factor.mono(pre, 1, den), theta_factor(targ, mod * M, den),
                               appell_m_factor(marg, minus_one, mmod, den)], N, den))
    gpart = sum_series(gterms, N, den).truncate(N) if gterms else QSeries.zero(N, den)
    norm = [theta_inverse_factor(minus_one, a * D * M, den), theta_inverse_factor(minus_one, c * D * M, den)]
    tparts = [product(fs + norm, N, den) for fs in _theta_part_factors(p, X, Y, M, den)]
    return MZParts(gpart, sum_series(tparts, N, den).truncate(N), vanished)


def mz_decomposition_rhs(p, X: Monomial, Y: Monomial, M: int, N, den: int = 1) -> QSeries:
    return mz_decomposition_parts(p, X, Y, M, N, den).total


def false_decomposition_rhs(p, X: Monomial, Y: Monomial, M: int, N, den: int = 1) -> QSeries:
    """Mixed false theta expansion of a definite-sign (D < 0) double sum."""
    p = _params(p)
    if p.D >= 0:
        raise ValueError(f"false theta decomposition needs D < 0, got D = {p.D}")
    terms = []
    for which, i, pre, targ, mod, marg in _shifted_theta_terms(p, X, Y, M, den):
        if theta_vanishes(targ, mod * M, den):
            continue
        P = -(p.a if which == "a" else p.c) * p.D * M
        w = -marg  # the false-theta argument carries no extra minus sign
        terms.append(product([Factor.mono(pre, 1, den), theta_factor(targ, mod * M, den),
                              false_theta_factor(w, P, den)], N, den))
    total = sum_series(terms, N, den).truncate(N) if terms else QSeries.zero(N, den)
    return total * Fraction(1, 2)
