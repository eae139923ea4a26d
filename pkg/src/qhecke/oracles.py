"""Deliberately naive reference evaluators.

Every routine here loops over a wide box of summation indices and expands
denominators term by term.  None of them shares pruning logic with the fast
evaluators, so agreement between the two is meaningful.
"""

from __future__ import annotations

from fractions import Fraction

from .blocks import sg1, sg2
from .series import Monomial, QSeries


def _acc(t: dict, qe: int, xe: int, c):
    p = t.setdefault(qe, {})
    p[xe] = p.get(xe, 0) + c


def _pow(m: Monomial, k: int):
    """(sign, xexp, qexp) of ``m**k``."""
    return (m.sign ** (k % 2) if m.sign < 0 else 1), m.xexp * k, m.qexp * k


def naive_hecke_f(a, b, c, X: Monomial, Y: Monomial, M: int, N, B: int = 40, den: int = 1) -> QSeries:
    t: dict = {}
    for r in range(-B, B + 1):
        for s in range(-B, B + 1):
            w = sg2(r, s)
            if not w:
                continue
            sx, ex, qx = _pow(X, r)
            sy, ey, qy = _pow(Y, s)
            qe = qx + qy + M * den * (a * r * (r - 1) // 2 + b * r * s + c * s * (s - 1) // 2)
            if qe <= N:
                _acc(t, qe, ex + ey, w * (-1) ** ((r + s) % 2) * sx * sy)
    return QSeries(t, N, den)


def naive_triple_g(coefs, X, Y, Z, M: int, N, B: int = 14, den: int = 1) -> QSeries:
    a, b, c, d, e, f = coefs
    t: dict = {}
    rng = range(-B, B + 1)
    for r in rng:
        for s in rng:
            for u in rng:
                if not ((r >= 0 and s >= 0 and u >= 0) or (r < 0 and s < 0 and u < 0)):
                    continue
                sx, ex, qx = _pow(X, r)
                sy, ey, qy = _pow(Y, s)
                sz, ez, qz = _pow(Z, u)
                quad = a * r * (r - 1) // 2 + b * r * s + c * s * (s - 1) // 2 + d * r * u + e * s * u + f * u * (u - 1) // 2
                qe = qx + qy + qz + M * den * quad
                if qe <= N:
                    _acc(t, qe, ex + ey + ez, (-1) ** ((r + s + u) % 2) * sx * sy * sz)
    return QSeries(t, N, den)


def naive_inverse_terms(m: Monomial, coeff, J: int):
    """Terms ``(coef, xexp, qexp)`` of ``1/(1 - coeff*m)`` to ``J`` steps."""
    w = m.sign * coeff
    if m.qexp > 0:
        return [(w ** j, m.xexp * j, m.qexp * j) for j in range(J)]
    if m.qexp < 0:
        # 1/(1-w) = -sum_{j>=1} w^{-j}
        wi = Fraction(1) / w
        return [(-(wi ** j), -m.xexp * j, -m.qexp * j) for j in range(1, J + 1)]
    if m.xexp == 0 and w != 1:
        return [(Fraction(1) / (1 - w), 0, 0)]
    raise ZeroDivisionError("pole")


def naive_appell_double(shape, N, B: int = 30, J: int = 60) -> QSeries:
    """Brute-force evaluation of an :class:`~qhecke.hecke.AppellShape`."""
    t: dict = {}
    for r in range(-B, B + 1):
        for s in range(-B, B + 1):
            w = sg2(r, s)
            if not w:
                continue
            sign = (-1) ** ((shape.sign_r * r + shape.sign_s * s) % 2)
            quad = (shape.alpha * r * (r - 1) // 2 + shape.beta * r * s + shape.gamma * s * (s - 1) // 2
                    + shape.delta * r + shape.eps * s + shape.const)
            terms = [(coef * w * sign, 0, quad + dr * r + ds * s + d0) for coef, dr, ds, d0 in shape.numer]
            for dn in shape.dens:
                exp = naive_inverse_terms(Monomial(dn.sign, dn.xexp, dn.kappa * r + dn.lam), 1, J)
                terms = [(c1 * c2, x1 + x2, q1 + q2) for c1, x1, q1 in terms for c2, x2, q2 in exp
                         if q1 + q2 <= N]
            for c0, xe, qe in terms:
                if qe <= N:
                    _acc(t, qe, xe, c0)
    return QSeries(t, N)


def naive_appell_m_numerator(Xm: Monomial, Z: Monomial, M: int, N, B: int = 30, J: int = 60, den: int = 1) -> QSeries:
    """``Theta(Z; q^M) * m(X, q^M, Z)``, i.e. the bare bilateral sum."""
    t: dict = {}
    A = M * den
    XZ = Xm * Z
    for r in range(-B, B + 1):
        sz, ez, qz = _pow(Z, r)
        qe0 = A * r * (r - 1) // 2 + qz
        c0 = (-1) ** (r % 2) * sz
        for c, xe, qe in naive_inverse_terms(XZ * Monomial(1, 0, A * (r - 1)), 1, J):
            if qe0 + qe <= N:
                _acc(t, qe0 + qe, ez + xe, c0 * c)
    return QSeries(t, N, den)


def naive_theta(z: Monomial, M: int, N, B: int = 60, den: int = 1) -> QSeries:
    t: dict = {}
    for n in range(-B, B + 1):
        s, xe, qe = _pow(z, n)
        qe += M * den * n * (n - 1) // 2
        if qe <= N:
            _acc(t, qe, xe, (-1) ** (n % 2) * s)
    return QSeries(t, N, den)


def naive_false_theta(w: Monomial, P: int, N, B: int = 60, den: int = 1) -> QSeries:
    t: dict = {}
    for r in range(-B, B + 1):
        s, xe, qe = _pow(w, r)
        qe += P * den * r * (r + 1) // 2
        if qe <= N:
            _acc(t, qe, xe, sg1(r) * s)
    return QSeries(t, N, den)


def naive_poch(base: Monomial, step: int, count: int, N) -> QSeries:
    """``prod_{k<count} (1 - base q^{step k})`` by repeated dense multiplication."""
    cur = {(0, 0): 1}
    for k in range(count):
        m = base * Monomial(1, 0, step * k)
        nxt = dict(cur)
        for (qe, xe), c in cur.items():
            key = (qe + m.qexp, xe + m.xexp)
            if key[0] <= N:
                nxt[key] = nxt.get(key, 0) - m.sign * c
        cur = nxt
    t: dict = {}
    for (qe, xe), c in cur.items():
        if qe <= N:
            _acc(t, qe, xe, c)
    return QSeries(t, N)


def naive_mul(a: QSeries, b: QSeries, N) -> QSeries:
    """Full product of the stored terms, then truncated (caller picks ``N``)."""
    t: dict = {}
    for n1, p1 in a.items():
        for n2, p2 in b.items():
            if n1 + n2 > N:
                continue
            for j1, c1 in p1.items():
                for j2, c2 in p2.items():
                    _acc(t, n1 + n2, j1 + j2, c1 * c2)
    return QSeries(t, N, a.den)
