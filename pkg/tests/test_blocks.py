import pytest

from qhecke.blocks import (
    UNIT_KINDS,
    delta,
    false_theta_line,
    poch_finite,
    poch_infinite,
    qpoch_q,
    sg1,
    sg2,
    theta,
    unit_theta_reciprocal,
)
from qhecke.oracles import naive_false_theta, naive_poch, naive_theta
from qhecke.series import Monomial, QSeries, X, eq_to_order, mul, scale, subst_x_inverse

from conftest import S


def test_sign_helpers():
    assert sg2(0, 0) == 1
    assert sg2(-1, -3) == -1
    assert sg2(5, -2) == 0
    assert sg1(0) == 1 and sg1(-1) == -1
    assert delta(0) == 1 and delta(3) == 0


def test_sg2_never_half():
    assert {sg2(r, s) for r in range(-4, 5) for s in range(-4, 5)} == {-1, 0, 1}


def test_poch_finite_examples():
    q = Monomial(1, 0, 1)
    assert poch_finite(q, 1, 2) == S(float("inf"), (0, 0, 1), (1, 0, -1), (2, 0, -1), (3, 0, 1))
    assert poch_finite(Monomial(-1, 1, 1), 1, 1) == S(float("inf"), (0, 0, 1), (1, 1, 1))
    xq = Monomial(1, 1, 1)
    expect = mul(S(float("inf"), (0, 0, 1), (1, 1, -1)), S(float("inf"), (0, 0, 1), (3, 1, -1)))
    assert poch_finite(xq, 2, 2) == expect


def test_poch_infinite_euler():
    p = poch_infinite(Monomial(1, 0, 1), 1, 7)
    assert p == S(7, (0, 0, 1), (1, 0, -1), (2, 0, -1), (5, 0, 1), (7, 0, 1))


def test_poch_infinite_constant_term_and_oracle():
    p = poch_infinite(X, 1, 10)
    assert p.coeff(0) == {0: 1, 1: -1}
    assert eq_to_order(p, naive_poch(X, 1, 12, 10), 10)[0]
    assert eq_to_order(poch_infinite(Monomial(1, 0, 2), 2, 30), qpoch_q(30, 2), 30)[0]


def test_poch_infinite_rejects_negative_base():
    with pytest.raises(ValueError):
        poch_infinite(Monomial(1, 0, -1), 1, 5)


def test_theta_examples():
    assert theta(X, 1, 0).coeff(0) == {0: 1, 1: -1}
    assert theta(Monomial(1, 0, 1), 1, 60).nterms() == 0
    assert theta(Monomial(-1, 0, 0), 1, 5).coeff(0) == {0: 2}


@pytest.mark.parametrize("z", [(1, 1, 0), (-1, 1, 0), (1, 1, 1), (-1, 0, 1), (1, 1, 2)])
@pytest.mark.parametrize("M", [1, 2])
def test_jacobi_triple_product(z, M):
    zm = Monomial(*z)
    assert eq_to_order(theta(zm, M, 200), theta(zm, M, 200, "product"), 200)[0]


def test_theta_matches_naive():
    z = Monomial(-1, 1, 1)
    assert eq_to_order(theta(z, 2, 40), naive_theta(z, 2, 40), 40)[0]


@pytest.mark.parametrize("n", range(-3, 4))
def test_theta_quasi_period(n):
    N = 60
    lhs = theta(Monomial(1, 1, n), 1, N)
    c2 = n * (n - 1) // 2
    rhs = scale(theta(X, 1, N + c2), Monomial(-1 if n % 2 else 1, -n, -c2)).truncate(N)
    assert eq_to_order(lhs, rhs, N)[0]


@pytest.mark.parametrize("n", range(0, 6))
def test_theta_vanishes_at_q_powers(n):
    assert theta(Monomial(1, 0, n), 1, 60, "product").nterms() == 0


def test_unit_theta_x():
    N = 20
    u = unit_theta_reciprocal("theta_x", N)
    assert eq_to_order(mul(u, theta(X, 1, N)), S(N, (0, 0, 1), (0, 1, -1)), N)[0]


def test_unit_theta_xinv():
    N = 20
    u = unit_theta_reciprocal("theta_xinv", N)
    th_inv = subst_x_inverse(theta(X, 1, N))
    assert eq_to_order(mul(u, th_inv), S(N, (0, -1, 1), (0, 0, -1)), N)[0]
    assert u == -unit_theta_reciprocal("theta_x", N)


def test_unit_theta_q2_kinds():
    N = 24
    qx = Monomial(1, 1, 1)
    assert eq_to_order(mul(unit_theta_reciprocal("theta_qx_q2", N), theta(qx, 2, N)), QSeries.constant(1, N), N)[0]
    mq = unit_theta_reciprocal("theta_mq_q2", N)
    assert mq.coeff(0) == {0: 1}
    assert eq_to_order(mul(mq, theta(Monomial(-1, 0, 1), 2, N)), QSeries.constant(1, N), N)[0]
    ratio = unit_theta_reciprocal("theta_qx_over_mq", N)
    assert eq_to_order(ratio, mul(theta(qx, 2, N), mq), N)[0]


def test_unit_kinds_are_units():
    for kind in UNIT_KINDS:
        c0 = unit_theta_reciprocal(kind, 6).coeff(0)
        assert len(c0) == 1 and abs(next(iter(c0.values()))) == 1


def test_unit_unknown_kind():
    with pytest.raises(ValueError):
        unit_theta_reciprocal("theta_y", 5)


def test_false_theta_line_head():
    # with w = 1 the terms r and -r-1 share an exponent and carry opposite signs
    assert false_theta_line(Monomial(1, 0, 0), 1, 30).nterms() == 0
    line = false_theta_line(X, 1, 3)
    assert line.coeff(0) == {0: 1, -1: -1}
    assert line.coeff(1) == {1: 1, -2: -1}


@pytest.mark.parametrize("w,P", [((1, 1, 0), 1), ((-1, 1, 2), 3), ((1, -1, -1), 2), ((-1, 0, 1), 4)])
def test_false_theta_line_matches_naive(w, P):
    wm = Monomial(*w)
    assert eq_to_order(false_theta_line(wm, P, 40), naive_false_theta(wm, P, 40), 40)[0]
