"""Registered rational-denominator double sums and their parameter domains."""

from __future__ import annotations

from .hecke import AppellShape, Denominator


class DomainError(ValueError):
    """Parameters outside a family's admissible range."""


def _c2(n: int) -> int:
    return n * (n - 1) // 2


X_Q = Denominator(1, 1, 1, 0)        # 1 - x q^r
X_Q2 = Denominator(1, 1, 2, 1)       # 1 - x q^(2r+1)


def check_g(t: int, m: int):
    if t < 1 or not (-t <= m <= 3 * t - 2) or (t - m) % 2:
        raise DomainError(f"g needs t >= 1, -t <= m <= 3t-2 and t = m mod 2; got t={t}, m={m}")


def check_h(t: int, m: int):
    if t < 1 or not (1 - t <= m <= t):
        raise DomainError(f"need t >= 1 and 1-t <= m <= t; got t={t}, m={m}")


def check_k(t: int, m: int):
    if t < 1:
        raise DomainError(f"need t >= 1; got t={t}")


def check_l(t: int, m: int):
    if t < 1 or not (0 <= m <= 3 * t - 1):
        raise DomainError(f"need t >= 1 and 0 <= m <= 3t-1; got t={t}, m={m}")


check_p = check_h


def g_shape(t: int, m: int, check: bool = True) -> AppellShape:
    if check:
        check_g(t, m)
    return AppellShape(1, 2 * t, 1, (t + 2 + m) // 2, (t + 2 - m) // 2, name=f"g[{t},{m}]")


def H_shape(t: int, m: int, check: bool = True) -> AppellShape:
    if check:
        check_h(t, m)
    return AppellShape(1, 2 * t, 1, 1 + t - m, 1, name=f"H[{t},{m}]")


def h_shape(t: int, m: int, check: bool = True) -> AppellShape:
    if check:
        check_h(t, m)
    return AppellShape(1, 2 * t, 1, 1 + t - m, 1, numer=((1, 0, 0, 0), (1, 2 * m, 0, 0)), name=f"h[{t},{m}]")


def k_shape(t: int, m: int, check: bool = True) -> AppellShape:
    if check:
        check_k(t, m)
    return AppellShape(2, 2 * t, 1, 2 * t, 2 * m, dens=(X_Q2,), name=f"k[{t},{m}]")


def Phi_shape(t: int, m: int, check: bool = True) -> AppellShape:
    if check:
        check_l(t, m)
    return AppellShape(1, 3 * t, 3 * t * (3 * t - 1), m + 1, _c2(3 * t) + 3 * t - 1, sign_s=0,
                       name=f"Phi[{t},{m}]")


def l_shape(t: int, m: int, check: bool = True) -> AppellShape:
    if check:
        check_l(t, m)
    c = _c2(3 * t - 1)
    return AppellShape(1, 3 * t, 3 * t * (3 * t - 1), m + 1, _c2(3 * t) + 3 * t - 1, sign_s=0,
                       numer=((1, 0, 0, 0), (-1, 3 * t - 2 * m, 2 * c, c)), name=f"l[{t},{m}]")


def p_shape(t: int, m: int, check: bool = True) -> AppellShape:
    """``p_{t,m}(x; q)``."""
    if check:
        check_p(t, m)
    return AppellShape(1, 2 * t, 1, t + m, t + m, name=f"p[{t},{m}]")


def p_qx_q2_shape(t: int, m: int, check: bool = True) -> AppellShape:
    """``p_{t,m}(qx; q^2)``: every exponent doubles and the x-denominator gains ``q``."""
    if check:
        check_p(t, m)
    return AppellShape(2, 4 * t, 2, 2 * (t + m), 2 * (t + m), dens=(X_Q2,), name=f"p(qx;q^2)[{t},{m}]")


# the five one-parameter expansions, transcribed term for term ---------------

BASE1 = AppellShape(1, 2, 1, 2, 1, name="base1")
BASE2 = AppellShape(1, 2, 1, 1, 1, numer=((1, 0, 0, 0), (1, 2, 0, 0)), name="base2")
BASE3 = AppellShape(2, 2, 1, 4, 2, const=1, dens=(Denominator(-1, 0, 2, 1), X_Q2), name="base3")
BASE4 = AppellShape(1, 3, 6, 2, 5, sign_s=0, numer=((1, 0, 0, 0), (-1, 1, 2, 1)), name="base4")
BASE5 = AppellShape(2, 4, 2, 4, 4, dens=(X_Q2,), name="base5")

FAMILIES = {
    "g": g_shape,
    "H": H_shape,
    "h": h_shape,
    "k": k_shape,
    "Phi": Phi_shape,
    "l": l_shape,
    "p": p_shape,
    "pq2": p_qx_q2_shape,
}
