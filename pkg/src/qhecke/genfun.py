"""q-hypergeometric generating functions for the unimodal-sequence families."""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations_with_replacement

from .blocks import poch_finite
from .series import Monomial, QSeries, div_one_minus, mul, mul_one_minus, scale, sum_series

GF_IDS = ("strongU", "unimodal", "doublePeak", "vScript", "vDurfee", "oddUnimodal")


def _check_order(N):
    if N < 0:
        raise ValueError("order must be nonnegative")


def gf_strong(N: int) -> QSeries:
    """``sum_n (-xq)_n (-q/x)_n q^(n+1)``."""
    _check_order(N)
    terms = []
    prod = QSeries.constant(1, N)
    n = 0
    while n + 1 <= N:
        terms.append(scale(prod, Monomial(1, 0, n + 1)).truncate(N))
        n += 1
        prod = mul_one_minus(mul_one_minus(prod, Monomial(-1, 1, n)), Monomial(-1, -1, n)).truncate(N)
    return sum_series(terms, N)


def _hyper(N: int, start: int, step: int) -> QSeries:
    """``sum_n q^(start + step*n) / ((xq)_n (q/x)_n)``."""
    terms = []
    base = QSeries.constant(1, N)
    n = 0
    while start + step * n <= N:
        terms.append(scale(base, Monomial(1, 0, start + step * n)).truncate(N))
        n += 1
        base = div_one_minus(div_one_minus(base, Monomial(1, 1, n)), Monomial(1, -1, n))
    return sum_series(terms, N)


def gf_unimodal(N: int) -> QSeries:
    _check_order(N)
    return _hyper(N, 0, 1)


def gf_double_peak(N: int) -> QSeries:
    _check_order(N)
    return _hyper(N, 0, 2)


def _odd_denoms(base: QSeries, n: int) -> QSeries:
    # divide by the new factors (1 - x q^(2n+1)) (1 - q^(2n+1)/x)
    return div_one_minus(div_one_minus(base, Monomial(1, 1, 2 * n + 1)), Monomial(1, -1, 2 * n + 1))


def gf_vscript(N: int) -> QSeries:
    """``sum_n (-q)_{2n} q^(2n+1) / ((xq;q^2)_{n+1} (q/x;q^2)_{n+1})``."""
    _check_order(N)
    terms = []
    base = _odd_denoms(QSeries.constant(1, N), 0)
    n = 0
    while 2 * n + 1 <= N:
        terms.append(scale(base, Monomial(1, 0, 2 * n + 1)).truncate(N))
        n += 1
        base = mul_one_minus(mul_one_minus(base, Monomial(-1, 0, 2 * n - 1)), Monomial(-1, 0, 2 * n))
        base = _odd_denoms(base.truncate(N), n)
    return sum_series(terms, N)


def gf_vdurfee(N: int) -> QSeries:
    """``sum_n (q^(n+1))_n q^n / ((xq)_n (q/x)_n)``."""
    _check_order(N)
    terms = []
    base = QSeries.constant(1, N)
    n = 0
    while n <= N:
        num = poch_finite(Monomial(1, 0, n + 1), 1, n, N)
        terms.append(scale(mul(base, num), Monomial(1, 0, n)).truncate(N))
        n += 1
        base = div_one_minus(div_one_minus(base, Monomial(1, 1, n)), Monomial(1, -1, n))
    return sum_series(terms, N)


def gf_odd(N: int) -> QSeries:
    """``sum_n q^(2n+1) / ((xq;q^2)_{n+1} (q/x;q^2)_{n+1})``."""
    _check_order(N)
    terms = []
    base = _odd_denoms(QSeries.constant(1, N), 0)
    n = 0
    while 2 * n + 1 <= N:
        terms.append(scale(base, Monomial(1, 0, 2 * n + 1)).truncate(N))
        n += 1
        base = _odd_denoms(base, n)
    return sum_series(terms, N)


_GF = {
    "strongU": gf_strong,
    "unimodal": gf_unimodal,
    "doublePeak": gf_double_peak,
    "vScript": gf_vscript,
    "vDurfee": gf_vdurfee,
    "oddUnimodal": gf_odd,
}


def gf(name: str, N: int) -> QSeries:
    try:
        fn = _GF[name]
    except KeyError:
        raise ValueError(f"unknown generating function {name!r}; expected one of {GF_IDS}") from None
    return fn(N)


# generalized strongly unimodal multisum ---------------------------------------

def _poly_mul(a: list, b: list) -> list:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


@lru_cache(maxsize=None)
def _qfact(n: int) -> tuple:
    """Coefficients of ``(q)_n``."""
    if n == 0:
        return (1,)
    prev = list(_qfact(n - 1))
    factor = [1] + [0] * (n - 1) + [-1]
    return tuple(_poly_mul(prev, factor))


def _poly_divexact(a: list, b: list) -> list:
    a = list(a)
    if len(a) < len(b):
        if any(a):
            raise ArithmeticError("q-binomial quotient is not a polynomial")
        return [0]
    out = [0] * (len(a) - len(b) + 1)
    lead = b[0]
    for i in range(len(out)):
        c, rem = divmod(a[i], lead)
        if rem:
            raise ArithmeticError("q-binomial quotient is not integral")
        out[i] = c
        if c:
            for j, y in enumerate(b):
                a[i + j] -= c * y
    if any(a):
        raise ArithmeticError("q-binomial quotient leaves a remainder")
    return out


@lru_cache(maxsize=None)
def qbinom(n: int, k: int) -> tuple:
    """Gaussian binomial ``(q)_n / ((q)_{n-k} (q)_k)`` by exact polynomial division."""
    if k < 0 or n < k:
        raise ValueError(f"q-binomial [{n}, {k}] outside 0 <= k <= n")
    quo = _poly_divexact(list(_qfact(n)), list(_qfact(n - k)))
    quo = _poly_divexact(quo, list(_qfact(k)))
    while len(quo) > 1 and quo[-1] == 0:
        quo.pop()
    return tuple(quo)


def genU_weight(ks: tuple, t: int, m: int):
    """Pure-q weight ``q^(k_t + sum k_i^2) * prod binomials`` as a coefficient list, or ``None``."""
    poly = [1]
    for i in range(1, t):
        top = ks[i] - ks[i - 1] - i + sum(2 * ks[j - 1] + (1 if m > j else 0) for j in range(1, i + 1))
        poly = _poly_mul(poly, list(qbinom(top, ks[i] - ks[i - 1])))
    shift = ks[-1] + sum(k * k for k in ks[:-1])
    return shift, poly


def _genU_tuples(t: int, m: int, limit: int):
    """Nondecreasing ``(k_1..k_t)`` with ``k_m >= 1`` and ``k_t + sum_{i<t} k_i^2 - t <= limit``."""
    for kt in range(1, limit + t + 1):
        budget = limit + t - kt
        for rest in combinations_with_replacement(range(kt + 1), t - 1):
            ks = rest + (kt,)
            if ks[m - 1] < 1:
                continue
            if sum(k * k for k in rest) > budget:
                continue
            yield ks


def gf_genU(t: int, m: int, N: int) -> QSeries:
    """Generalized strongly unimodal multisum ``U_t^{(m)}(x; q)`` exact to ``N``."""
    if not (1 <= m <= t):
        raise ValueError(f"generalized U needs 1 <= m <= t, got t={t}, m={m}")
    _check_order(N)
    pairs = {}
    terms = []
    for ks in _genU_tuples(t, m, N):
        kt = ks[-1]
        shift, poly = genU_weight(ks, t, m)
        if shift - t > N:
            continue
        if kt not in pairs:
            pairs[kt] = (poch_finite(Monomial(-1, 1, 1), 1, kt - 1, N + t)
                         * poch_finite(Monomial(-1, -1, 1), 1, kt - 1, N + t))
        w = QSeries.from_terms(((shift - t + i, 0, c) for i, c in enumerate(poly) if c), N)
        terms.append(mul(pairs[kt], w).truncate(N))
    return sum_series(terms, N)
