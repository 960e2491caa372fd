import pytest

from helpers import make_corpus


@pytest.fixture(scope="session")
def corpus():
    """200 random valid causets, 2 to 12 points, frozen seed."""
    return make_corpus(seed=42, count=200, n_lo=2, n_hi=13)
