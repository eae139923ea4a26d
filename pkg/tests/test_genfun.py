from itertools import product as cartesian

import pytest

from qhecke.genfun import GF_IDS, gf, gf_genU, qbinom
from qhecke.series import Monomial, QSeries, eq_to_order, scale, subst_x_constant


def _pmul(a, b, N):
    out = [0] * (N + 1)
    for i, x in enumerate(a):
        if x and i <= N:
            for j, y in enumerate(b):
                if i + j > N:
                    break
                out[i + j] += x * y
    return out


def _pascal_qbinom(n, k):
    """[n, k]_q from the q-Pascal rule [n,k] = [n-1,k-1] + q^k [n-1,k]."""
    if k < 0 or k > n:
        return [0]
    if k == 0 or k == n:
        return [1]
    a = _pascal_qbinom(n - 1, k - 1)
    b = [0] * k + _pascal_qbinom(n - 1, k)
    return [(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(max(len(a), len(b)))]


def naive_genU_at_minus_one(t, m, N):
    """The multisum at x = -1, summed over a box of indices with dense lists."""
    top = N + t
    total = [0] * (top + 1)
    K = int(top ** 0.5) + 2
    for ks in cartesian(range(0, top + 2), *[range(0, K + 1)] * (t - 1)):
        kt, rest = ks[0], ks[1:]
        seq = tuple(rest) + (kt,)
        if any(seq[i] > seq[i + 1] for i in range(t - 1)) or seq[m - 1] < 1:
            continue
        shift = kt + sum(k * k for k in rest)
        if shift > top:
            continue
        poly = [1]
        for i in range(1, kt):
            poly = _pmul(poly, [1] + [0] * (i - 1) + [-1], top)  # (q)_{kt-1}
        poly = _pmul(poly, poly, top)
        for i in range(1, t):
            n = seq[i] - seq[i - 1] - i + sum(2 * seq[j - 1] + (1 if m > j else 0) for j in range(1, i + 1))
            poly = _pmul(poly, _pascal_qbinom(n, seq[i] - seq[i - 1]), top)
        for e, c in enumerate(poly):
            if e + shift <= top:
                total[e + shift] += c
    return QSeries.from_terms(((e - t, 0, c) for e, c in enumerate(total) if c), N)


def test_strong_weight_five():
    assert gf("strongU", 5).coeff(5) == {-1: 2, 0: 2, 1: 2}


def test_double_peak_constant():
    assert gf("doublePeak", 0).coeff(0) == {0: 1}


def test_unimodal_weight_four_total():
    assert subst_x_constant(gf("unimodal", 4), 1).coeff(4) == {0: 12}


def test_unknown_id():
    with pytest.raises(ValueError):
        gf("bimodal", 3)


def test_genU_base_case():
    N = 20
    lhs = gf_genU(1, 1, N)
    rhs = scale(gf("strongU", N + 1), Monomial(1, 0, -1))
    assert eq_to_order(lhs, rhs, N)[0]


@pytest.mark.parametrize("t,m", [(2, 1), (2, 2), (3, 2)])
def test_genU_at_minus_one_matches_naive(t, m):
    N = 12
    assert eq_to_order(subst_x_constant(gf_genU(t, m, N), -1), naive_genU_at_minus_one(t, m, N), N)[0]


def test_genU_domain():
    with pytest.raises(ValueError):
        gf_genU(2, 3, 5)
    with pytest.raises(ValueError):
        gf_genU(2, 0, 5)


def test_qbinom_against_pascal():
    for n in range(9):
        for k in range(n + 1):
            assert list(qbinom(n, k)) == _pascal_qbinom(n, k)


def test_strong_rank_symmetry():
    s = gf("strongU", 16)
    for n, p in s.items():
        assert all(p.get(-j) == c for j, c in p.items())


@pytest.mark.parametrize("name", GF_IDS)
def test_counts_are_nonnegative_and_rank_bounded(name):
    s = gf(name, 18)
    assert s.is_integral()
    for n, p in s.items():
        assert all(c > 0 for c in p.values())
        assert max(abs(j) for j in p) <= n
