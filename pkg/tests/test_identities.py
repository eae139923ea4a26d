import pytest

from qhecke import identities as ids
from qhecke.blocks import qpoch_q
from qhecke.families import BASE5, DomainError
from qhecke.genfun import gf
from qhecke.hecke import appell_double
from qhecke.series import Monomial, eq_to_order, scale


def holds(pair, N):
    return eq_to_order(*pair, N)


@pytest.mark.parametrize("name", ["base1", "base2", "base3", "base4", "base5"])
def test_base_identities(name):
    assert holds(getattr(ids, name)(30), 30)[0]


def test_base5_needs_squared_prefactor():
    N = 20
    single = gf("oddUnimodal", N) * qpoch_q(N, 2, 1)
    rhs = scale(appell_double(BASE5, N), Monomial(1, 0, 1))
    assert not eq_to_order(single, rhs, N)[0]
    assert eq_to_order(gf("oddUnimodal", N) * qpoch_q(N, 2, 2), rhs, N)[0]


@pytest.mark.parametrize("family", ["U", "W", "Vscript", "Vscript_diff", "V", "O"])
def test_base_case_collapse(family):
    assert holds(ids.defs(30, family), 30)[0]


@pytest.mark.parametrize("t,m", [(1, 1), (2, 0)])
def test_hatted_and_assembled_forms_agree(t, m):
    assert holds(ids.end1(20, t, m), 20)[0]
    assert holds(ids.mf1(20, t, m), 20)[0]


def test_mf4_printed_sign_fails():
    ok, w = holds(ids.mf4(10, 1, 1, lead_sign=-1), 10)
    assert not ok and w[:2] == (0, 0)
    assert holds(ids.mf4(10, 1, 1), 10)[0]


@pytest.mark.parametrize("m", [0, 1, 2])
def test_r7_printed_power_fails_at_t2(m):
    assert not holds(ids.r7(12, 2, m, xexp=1 - 2 * 2), 12)[0]
    assert holds(ids.r7(12, 2, m), 12)[0]


def test_r7_power_irrelevant_at_t1():
    assert holds(ids.r7(15, 1, 1, xexp=-1), 15)[0]


def test_lower_order_is_prefix():
    lhs, rhs = ids.mf2(25, 2, 1)
    lo_l, lo_r = ids.mf2(20, 2, 1)
    assert eq_to_order(lhs, lo_l, 20)[0] and eq_to_order(rhs, lo_r, 20)[0]


def test_domain_guard():
    with pytest.raises(DomainError):
        ids.mf4(10, 1, 3)


@pytest.mark.parametrize("which", ["prop0", "prop1", "prop2", "prop3"])
def test_sign_propositions(which):
    lhs, rhs = ids.prop_check(0, which, t=2)
    assert lhs.coeff(0) == {} and rhs.coeff(0) == {}


def test_clearing_documented_for_every_hatted_form():
    for name in ("end1", "end2", "end4", "lastone", "odd_hat", "base5"):
        assert name in ids.CLEARING
