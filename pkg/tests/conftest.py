import pytest
from hypothesis import settings

from qhecke.series import QSeries

settings.register_profile("ci", max_examples=40, deadline=None)
settings.load_profile("ci")


def S(hi, *terms, den=1):
    """Build a series from ``(qexp, xexp, coeff)`` triples."""
    return QSeries.from_terms(terms, hi, den)


@pytest.fixture
def series():
    return S
