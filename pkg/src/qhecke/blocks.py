"""Closed-form building blocks: sg/delta, Pochhammer products, theta functions,
reciprocal theta units and one-sided (false) theta lines."""

from __future__ import annotations

import math

from .series import (
    INF,
    Factor,
    Monomial,
    NonUnitError,
    QSeries,
    div_one_minus,
    invert,
    mul_one_minus,
    scale,
)


def sg1(r: int) -> int:
    return 1 if r >= 0 else -1


def sg2(r: int, s: int) -> int:
    # the average of two signs; never +-1/2
    return (sg1(r) + sg1(s)) // 2


def delta(r: int) -> int:
    return 1 if r == 0 else 0


def binom2(n) -> object:
    """``n(n-1)/2`` for integer or rational ``n``."""
    return n * (n - 1) / 2 if not isinstance(n, int) else n * (n - 1) // 2


# convex quadratic windows ------------------------------------------------

def quad(A, B, C0, n):
    return A * (n * (n - 1) // 2) + B * n + C0


def window(A, B, C0, limit, lo=None, hi=None) -> range:
    """Integers ``n`` in ``[lo, hi]`` with ``A*C(n,2) + B*n + C0 <= limit``; ``A > 0``.

    ``None`` bounds are unbounded.  The solution set of a convex inequality is
    an interval, found by walking out from the clamped vertex.
    """
    if A <= 0:
        raise ValueError("window needs a positive quadratic coefficient")
    if limit == INF:
        raise ValueError("window needs a finite limit")
    n0 = math.floor(0.5 - B / A + 0.5)
    if lo is not None and n0 < lo:
        n0 = lo
    if hi is not None and n0 > hi:
        n0 = hi
    # the clamped rounded vertex may be one step off the true minimizer
    best = n0
    for cand in (n0 - 1, n0 + 1):
        if (lo is None or cand >= lo) and (hi is None or cand <= hi) and quad(A, B, C0, cand) < quad(A, B, C0, best):
            best = cand
    if quad(A, B, C0, best) > limit:
        return range(0)
    top = best
    while (hi is None or top < hi) and quad(A, B, C0, top + 1) <= limit:
        top += 1
    bot = best
    while (lo is None or bot > lo) and quad(A, B, C0, bot - 1) <= limit:
        bot -= 1
    return range(bot, top + 1)


def quad_min(A, B, C0, lo=None, hi=None):
    """Minimum of ``A*C(n,2) + B*n + C0`` over integers in ``[lo, hi]``."""
    n0 = math.floor(0.5 - B / A + 0.5)
    cands = [n0 - 1, n0, n0 + 1]
    if lo is not None:
        cands = [max(c, lo) for c in cands]
    if hi is not None:
        cands = [min(c, hi) for c in cands]
    return min(quad(A, B, C0, c) for c in cands)


# Pochhammer products -------------------------------------------------------

def poch_finite(base: Monomial, step: int, n: int, N=INF, den: int = 1) -> QSeries:
    """``prod_{k=1}^{n} (1 - base * q^{step*(k-1)})`` truncated to ``N``."""
    out = QSeries.constant(1, INF, den)
    for k in range(n):
        out = mul_one_minus(out, base * Monomial(1, 0, step * k * den))
    return out.truncate(N)


def poch_infinite(base: Monomial, step: int, N, den: int = 1) -> QSeries:
    """``prod_{k>=0} (1 - base * q^{step*k})`` exact to ``N``; needs ``base.qexp >= 0``."""
    if base.qexp < 0:
        raise ValueError(f"infinite Pochhammer needs a base of nonnegative q-valuation, got {base}")
    if step < 1:
        raise ValueError("Pochhammer step must be >= 1")
    out = QSeries.constant(1, N, den)
    k = 0
    while base.qexp + step * k * den <= N:
        out = mul_one_minus(out, base * Monomial(1, 0, step * k * den))
        k += 1
    return out


def poch_infinite_inverse(base: Monomial, step: int, N, den: int = 1) -> QSeries:
    """``1 / (base; q^step)_inf`` built factor by factor; needs ``base.qexp > 0``."""
    if base.qexp <= 0:
        raise NonUnitError(f"(1 - {base}) has no power-series reciprocal")
    out = QSeries.constant(1, N, den)
    k = 0
    while base.qexp + step * k * den <= N:
        out = div_one_minus(out, base * Monomial(1, 0, step * k * den))
        k += 1
    return out


def qpoch_q(N, step: int = 1, power: int = 1) -> QSeries:
    """``(q^step; q^step)_inf ** power``; negative powers are reciprocals."""
    base = Monomial(1, 0, step)
    if power >= 0:
        out = QSeries.constant(1, N)
        for _ in range(power):
            out = out * poch_infinite(base, step, N)
        return out
    out = QSeries.constant(1, N)
    for _ in range(-power):
        out = div_by_poch(out, base, step)
    return out


def div_by_poch(a: QSeries, base: Monomial, step: int) -> QSeries:
    """``a / (base; q^step)_inf`` for ``base.qexp > 0``; exact to ``a.hi``."""
    k = 0
    while base.qexp + step * k * a.den <= a.hi - a.lo:
        a = div_one_minus(a, base * Monomial(1, 0, step * k * a.den))
        k += 1
    return a


# theta functions ------------------------------------------------------------

def theta_terms(z: Monomial, M: int, N, den: int = 1):
    """Terms ``(qexp, xexp, coeff)`` of ``sum_n (-1)^n Q^{C(n,2)} z^n``, ``Q = q^M``."""
    A = M * den
    for n in window(A, z.qexp, 0, N):
        c = -1 if n % 2 else 1
        if z.sign < 0 and n % 2:
            c = -c
        yield A * (n * (n - 1) // 2) + z.qexp * n, z.xexp * n, c


def theta_lo(z: Monomial, M: int, den: int = 1) -> int:
    return quad_min(M * den, z.qexp, 0)


def theta_vanishes(z: Monomial, M: int, den: int = 1) -> bool:
    """``Theta(q^{kM}; q^M) == 0`` identically."""
    return z.sign > 0 and z.xexp == 0 and z.qexp % (M * den) == 0


def theta(z: Monomial, M: int, N, method: str = "sum", den: int = 1) -> QSeries:
    """``Theta(z; q^M) = (z)_inf (Q/z)_inf (Q)_inf`` exact to ``N``."""
    if method == "sum":
        return QSeries.from_terms(theta_terms(z, M, N, den), N, den)
    if method != "product":
        raise ValueError(f"unknown theta method {method!r}")
    A = M * den
    k, r0 = divmod(z.qexp, A)
    z0 = Monomial(z.sign, z.xexp, r0)
    # Theta(Q^k z0) = (-1)^k Q^{-C(k,2)} z0^{-k} Theta(z0)
    pre = (z0 ** (-k)) * Monomial(-1 if k % 2 else 1, 0, -A * (k * (k - 1) // 2))
    inner_N = N - pre.qexp
    out = QSeries.constant(1, inner_N, den)
    j = 0
    while r0 + A * j <= inner_N:
        out = mul_one_minus(out, z0 * Monomial(1, 0, A * j))
        j += 1
    zi = z0.inverse()
    j = 1
    while A * j - r0 <= inner_N:
        out = mul_one_minus(out, zi * Monomial(1, 0, A * j))
        j += 1
    j = 1
    while A * j <= inner_N:
        out = mul_one_minus(out, Monomial(1, 0, A * j))
        j += 1
    return scale(out, pre).truncate(N)


def theta_factor(z: Monomial, M: int, den: int = 1) -> Factor:
    return Factor(theta_lo(z, M, den), lambda N: theta(z, M, N, "sum", den))


def theta_valuation(z: Monomial, M: int, den: int = 1) -> int:
    """Actual valuation of ``Theta(z; q^M)`` (raises if it vanishes identically)."""
    if theta_vanishes(z, M, den):
        raise ZeroDivisionError(f"Theta({z}; q^{M}) vanishes identically")
    lo = theta_lo(z, M, den)
    span = M * den
    while True:
        s = theta(z, M, lo + span, "sum", den)
        if s.lo <= s.hi and s.coeff(s.lo):
            return s.lo
        span *= 2


def theta_inverse_factor(z: Monomial, M: int, den: int = 1) -> Factor:
    """``1/Theta(z; q^M)`` via series inversion (lowest coefficient must be a unit)."""
    v = theta_valuation(z, M, den)

    def build(N):
        return invert(theta(z, M, N + 2 * v, "sum", den), N)
    return Factor(-v, build)


# reciprocal units ------------------------------------------------------------

UNIT_KINDS = ("theta_x", "theta_xinv", "theta_qx_q2", "theta_mq_q2", "theta_qx_over_mq")


def _div_factors(out: QSeries, mons) -> QSeries:
    for m in mons:
        out = div_one_minus(out, m)
    return out


def unit_theta_reciprocal(kind: str, N) -> QSeries:
    """Reciprocal theta prefactors realized as closed products.

    ``theta_x``           (1-x)/Theta(x;q)      = 1/((qx)_inf (q/x)_inf (q)_inf)
    ``theta_xinv``        x^-1(1-x)/Theta(1/x;q) = -1/((qx)_inf (q/x)_inf (q)_inf)
    ``theta_qx_q2``       1/Theta(qx;q^2)
    ``theta_mq_q2``       1/Theta(-q;q^2)
    ``theta_qx_over_mq``  Theta(qx;q^2)/Theta(-q;q^2)
    """
    one = QSeries.constant(1, N)
    if kind in ("theta_x", "theta_xinv"):
        mons = []
        for k in range(1, N + 1):
            mons += [Monomial(1, 1, k), Monomial(1, -1, k), Monomial(1, 0, k)]
        out = _div_factors(one, mons)
        return out if kind == "theta_x" else -out
    if kind == "theta_qx_q2":
        mons = []
        for k in range(0, N + 1):
            mons += [Monomial(1, 1, 2 * k + 1), Monomial(1, -1, 2 * k + 1), Monomial(1, 0, 2 * k + 2)]
        return _div_factors(one, [m for m in mons if m.qexp <= N])
    if kind == "theta_mq_q2":
        mons = []
        for k in range(0, N + 1):
            mons += [Monomial(-1, 0, 2 * k + 1)] * 2 + [Monomial(1, 0, 2 * k + 2)]
        return _div_factors(one, [m for m in mons if m.qexp <= N])
    if kind == "theta_qx_over_mq":
        return theta(Monomial(1, 1, 1), 2, N) * unit_theta_reciprocal("theta_mq_q2", N)
    raise ValueError(f"unknown reciprocal kind {kind!r}; expected one of {UNIT_KINDS}")


def unit_factor(kind: str) -> Factor:
    return Factor(0, lambda N: unit_theta_reciprocal(kind, N))


# false theta lines ------------------------------------------------------------

def false_theta_line(w: Monomial, P: int, N, den: int = 1) -> QSeries:
    """``sum_r sg(r) w^r q^{P r(r+1)/2}`` exact to ``N``; ``P >= 1``."""
    if P < 1:
        raise ValueError("false theta line needs P >= 1")
    A = P * den
    items = []
    # P*C(r+1,2) = P*C(r,2) + P*r
    for r in window(A, A + w.qexp, 0, N):
        c = sg1(r)
        if w.sign < 0 and r % 2:
            c = -c
        items.append((A * (r * (r - 1) // 2) + A * r + w.qexp * r, w.xexp * r, c))
    return QSeries.from_terms(items, N, den)


def false_theta_lo(w: Monomial, P: int, den: int = 1) -> int:
    A = P * den
    return quad_min(A, A + w.qexp, 0)


def false_theta_factor(w: Monomial, P: int, den: int = 1) -> Factor:
    return Factor(false_theta_lo(w, P, den), lambda N: false_theta_line(w, P, N, den))
