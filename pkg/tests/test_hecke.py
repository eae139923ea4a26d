from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from qhecke.blocks import theta
from qhecke.families import BASE1, BASE3, DomainError, g_shape, h_shape, k_shape, l_shape, p_qx_q2_shape
from qhecke.hecke import (
    appell_double,
    appell_m,
    false_decomposition_rhs,
    hecke_f,
    hecke_lo,
    mz_decomposition_parts,
    mz_decomposition_rhs,
    regularized_appell,
    shape_lo,
    theta_x_closed,
    triple_g,
    triple_lo,
)
from qhecke.identities import _phi_consts
from qhecke.oracles import naive_appell_double, naive_appell_m_numerator, naive_hecke_f, naive_triple_g
from qhecke.series import Monomial, PoleError, X, eq_to_order, mul, mul_one_minus, subst_x_constant, sum_series

q = Monomial(1, 0, 1)


def test_hecke_origin_term():
    s = hecke_f((2, 1, 2), Monomial(1, 1, 3), Monomial(1, -1, 3), 1, 2)
    assert s.coeff(0) == {0: 1}


def test_hecke_matches_naive_small():
    N = 6
    assert eq_to_order(hecke_f((1, 2, 1), q, q, 1, N), naive_hecke_f(1, 2, 1, q, q, 1, N), N)[0]


@pytest.mark.parametrize("abc,Xs,Ys,M", [
    ((1, 3, 12), (1, -1, 1), (-1, 0, 8), 1),
    ((1, 1, 2), (1, 1, 0), (1, 0, 1), 1),
    ((2, 3, 2), (1, 0, 1), (1, 0, 2), 1),
    ((1, 4, 1), (-1, 1, 2), (1, -1, 3), 2),
])
def test_hecke_matches_naive(abc, Xs, Ys, M):
    Xm, Ym = Monomial(*Xs), Monomial(*Ys)
    N = 30
    fast = hecke_f(abc, Xm, Ym, M, N)
    assert eq_to_order(fast, naive_hecke_f(*abc, Xm, Ym, M, N), N)[0]
    assert fast.lo >= hecke_lo(abc, Xm, Ym, M)


mono = st.builds(Monomial, st.sampled_from([1, -1]), st.integers(-1, 1), st.integers(1, 3))


@given(st.integers(1, 4), st.integers(1, 4), st.integers(1, 4), mono, mono)
def test_hecke_symmetry(a, b, c, Xm, Ym):
    N = 15
    assert eq_to_order(hecke_f((a, b, c), Xm, Ym, 1, N), hecke_f((c, b, a), Ym, Xm, 1, N), N)[0]


def test_triple_origin_and_mf4_shape():
    t, m = 1, 1
    _, _, Y2 = _phi_consts(t, m)
    coefs = (1, 1, 3 * t, 1, 3 * t, 1)
    Xm, Zm = Monomial(1, -1, 1), Monomial(1, 0, 1)
    N = 20
    fast = triple_g(coefs, Xm, Y2, Zm, 1, N)
    assert eq_to_order(fast, naive_triple_g(coefs, Xm, Y2, Zm, 1, N), N)[0]
    assert fast.lo >= triple_lo(coefs, Xm, Y2, Zm)


def test_triple_negative_octant_sign():
    coefs = (2, 1, 2, 1, 1, 2)
    Xm = Ym = Zm = Monomial(1, 1, 2)
    N = 25
    assert eq_to_order(triple_g(coefs, Xm, Ym, Zm, 1, N), naive_triple_g(coefs, Xm, Ym, Zm, 1, N), N)[0]


def test_appell_m_rational_unit():
    # X = q, Z = -1: the row with 1 - q^(r-1) X Z = 1 + 1 contributes halves
    N = 15
    Z = Monomial(-1, 0, 0)
    m = appell_m(q, Z, 1, N)
    assert not m.is_integral()
    lhs = mul(m, theta(Z, 1, N))
    assert eq_to_order(lhs, naive_appell_m_numerator(q, Z, 1, N), N)[0]
    assert any(isinstance(c, Fraction) for _, p in naive_appell_m_numerator(q, Z, 1, 3).items() for c in p.values())


def test_appell_m_pole():
    with pytest.raises(PoleError):
        appell_m(Monomial(-1, 0, 2), Monomial(-1, 0, 0), 1, 5)


def test_appell_double_k_matches_naive():
    N = 20
    sh = k_shape(1, 1)
    assert eq_to_order(appell_double(sh, N), naive_appell_double(sh, N), N)[0]


def test_appell_double_k_at_minus_one():
    kk = subst_x_constant(appell_double(k_shape(2, 1), 20), -1)
    assert kk.is_pure_q()


def test_two_term_numerator_is_sum_of_splits():
    N = 20
    sh = h_shape(2, 1)
    parts = [regularized_appell(s, N) for s in sh.split()]
    assert len(parts) == 2
    assert eq_to_order(regularized_appell(sh, N), sum_series(parts, N), N)[0]


def test_pole_row_raises():
    with pytest.raises(PoleError):
        appell_double(g_shape(1, 1), 5)


def test_domain_validation():
    with pytest.raises(DomainError):
        g_shape(2, 1)
    with pytest.raises(DomainError):
        h_shape(1, 2)
    with pytest.raises(DomainError):
        l_shape(1, 3)


def test_regularized_counts_unimodal():
    from qhecke.identities import combo, fpoch, freg
    U = combo(10, [(1, [freg(BASE1, "one_minus_x"), fpoch(1, -2)])])
    assert sum(U.coeff(4).values()) == 12


def test_regularized_has_no_pole():
    s = regularized_appell(g_shape(2, 2), 20, "theta_x")
    assert all(len(p) < 200 for _, p in s.items())


def test_theta_clearing_two_routes():
    N = 20
    sh = h_shape(1, 1)
    direct = regularized_appell(sh, N, "theta_x")
    via = mul(regularized_appell(sh, N + 5, "one_minus_x"), theta_x_closed(N + 5))
    assert eq_to_order(direct, via, N)[0]
    assert eq_to_order(mul_one_minus(theta_x_closed(N), X), theta(X, 1, N), N)[0]


@pytest.mark.parametrize("sh", [k_shape(1, 0), k_shape(2, -1), p_qx_q2_shape(1, 1), BASE3])
def test_certified_lo(sh):
    N = 15
    naive = naive_appell_double(sh, N)
    assert naive.lo >= shape_lo(sh)


def test_mz_decomposition_232():
    N = 20
    lhs = hecke_f((2, 3, 2), q, Monomial(1, 0, 2), 1, N)
    assert eq_to_order(lhs, mz_decomposition_rhs((2, 3, 2), q, Monomial(1, 0, 2), 1, N), N)[0]


@pytest.mark.parametrize("k", [0, 1, 2])
def test_mz_collapse(k):
    N = 20
    Xm, Ym = Monomial(1, 0, 2 * (k - 1)), Monomial(1, 0, 2)
    parts = mz_decomposition_parts((1, 2, 1), Xm, Ym, 1, N, 2)
    assert parts.gpart.nterms() == 0 and len(parts.vanished) == 2
    assert eq_to_order(hecke_f((1, 2, 1), Xm, Ym, 1, N, 2), parts.thetapart, N)[0]


def test_false_decomposition_112():
    N = 25
    Ym = q
    assert eq_to_order(hecke_f((1, 1, 2), X, Ym, 1, N), false_decomposition_rhs((1, 1, 2), X, Ym, 1, N), N)[0]


def test_false_decomposition_mf1_interior():
    # t = m = 1, k = 0
    Xm, Ym = Monomial(1, 0, 1 + 2 - 4), Monomial(1, 0, 1)
    N = 30
    assert eq_to_order(hecke_f((1, 3, 12), Xm, Ym, 1, N), false_decomposition_rhs((1, 3, 12), Xm, Ym, 1, N), N)[0]


def test_decomposition_sign_guards():
    with pytest.raises(ValueError):
        false_decomposition_rhs((2, 3, 2), q, q, 1, 5)
    with pytest.raises(ValueError):
        mz_decomposition_rhs((1, 1, 2), q, q, 1, 5)
