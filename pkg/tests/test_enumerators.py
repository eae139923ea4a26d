import json

import pytest

from qhecke.enumerators import (
    BAR, FAMILIES, LimitExceeded, RankTable, durfee, enum_double_peak, enum_strong, enum_unimodal,
    enum_vdurfee, enum_vscript, enumerate_family, listing, partitions, sequences,
)
from qhecke.genfun import gf


def marked(*seqs):
    """Sequences written with ' for an overline, e.g. "1, 3', 1"."""
    return {"(" + s.replace("'", BAR) + ")" for s in seqs}


WEIGHT_LISTS = {
    ("strongU", 5): {"(5)", "(1, 4)", "(4, 1)", "(1, 3, 1)", "(2, 3)", "(3, 2)"},
    ("unimodal", 4): marked("4'", "1, 3'", "3', 1", "1, 2', 1", "2', 2", "2, 2'", "1, 1, 2'", "2', 1, 1",
                            "1', 1, 1, 1", "1, 1', 1, 1", "1, 1, 1', 1", "1, 1, 1, 1'"),
    ("doublePeak", 6): marked("3', 3'", "2', 2', 2", "2, 2', 2'", "2', 2', 1, 1", "1, 2', 2', 1",
                              "1, 1, 2', 2'", "1', 1', 1, 1, 1, 1", "1, 1', 1', 1, 1, 1",
                              "1, 1, 1', 1', 1, 1", "1, 1, 1, 1', 1', 1", "1, 1, 1, 1, 1', 1'"),
    ("vScript", 5): marked("5'", "1, 3', 1", "1, 1, 3'", "3', 1, 1", "3', 1', 1", "1, 3', 1'", "2, 3'",
                           "1, 1, 1, 1, 1'", "1, 1, 1, 1', 1", "1, 1, 1', 1, 1", "1, 1', 1, 1, 1",
                           "1', 1, 1, 1, 1"),
    ("vDurfee", 4): marked("4'", "1, 3'", "3', 1", "1, 2', 1", "2', 2", "2, 2'", "1, 1, 2'", "2', 1, 1",
                           "1', 1, 1, 1", "1, 1, 1, 1'"),
}


@pytest.mark.parametrize("family,n", sorted(WEIGHT_LISTS))
def test_listings_reproduce(family, n):
    got = listing(family, n)
    assert len(got) == len(set(got))
    assert set(got) == WEIGHT_LISTS[(family, n)]


def test_strong_weight_five_ranks():
    assert enum_strong(5).row(5) == {-1: 2, 0: 2, 1: 2}


@pytest.mark.parametrize("fn,n,total", [
    (enum_strong, 1, 1), (enum_unimodal, 1, 1), (enum_unimodal, 4, 12), (enum_double_peak, 6, 11),
    (enum_double_peak, 0, 1), (enum_vscript, 5, 12), (enum_vdurfee, 4, 10), (enum_vdurfee, 0, 1),
])
def test_totals(fn, n, total):
    assert fn(n).total(n) == total


def test_vscript_weight_zero_matches_series():
    assert enum_vscript(0).total(0) == 0
    assert gf("vScript", 0).coeff(0) == {}


@pytest.mark.parametrize("family", FAMILIES)
def test_tables_equal_series(family):
    N = 14
    assert enumerate_family(family, N) == RankTable.from_series(gf(family, N), N)


def test_durfee():
    assert durfee([]) == 0
    assert durfee([1, 1, 1]) == 1
    assert durfee([3, 2, 2]) == 2
    assert durfee([5, 5, 5, 5, 1]) == 4


def test_partition_counts():
    assert [sum(1 for _ in partitions(n)) for n in range(10)] == [1, 1, 2, 3, 5, 7, 11, 15, 22, 30]
    assert sum(1 for _ in partitions(10, distinct=True)) == 10


def test_equal_maxima_are_separate_objects():
    seqs = sequences("unimodal", 4)
    assert ((), 2, (2,)) in seqs and ((2,), 2, ()) in seqs


def test_csv_and_json():
    tab = enum_strong(3)
    assert tab.to_csv().splitlines() == ["n,m,count", "1,0,1", "2,0,1", "3,-1,1", "3,0,1", "3,1,1"]
    assert json.loads(tab.to_json()) == {"nmax": 3, "rows": [[1, 0, 1], [2, 0, 1], [3, -1, 1], [3, 0, 1], [3, 1, 1]]}
    assert tab.to_text().splitlines()[0] == "n=0 total=0"


def test_limit():
    with pytest.raises(LimitExceeded):
        enumerate_family("strongU", 21)
    assert enumerate_family("strongU", 21, limit=21).total(21) > 0


def test_unknown_family():
    with pytest.raises(ValueError):
        enumerate_family("trimodal", 3)


def test_from_series_rejects_negative():
    from qhecke.series import QSeries
    with pytest.raises(ValueError):
        RankTable.from_series(QSeries.from_terms([(1, 0, -1)], 2), 2)
