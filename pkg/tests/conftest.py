import pytest
from hypothesis import settings

from branchforge.algebra import X, Y
from branchforge.corpus import corpus

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

CUSP = Y**2 - X**3
QUARTIC = (Y**2 - X**3) ** 2 - 4 * X**5 * Y - X**7


@pytest.fixture
def cusp():
    return CUSP


@pytest.fixture
def quartic():
    return QUARTIC


@pytest.fixture(scope="session")
def small_corpus():
    """Branches with n <= 8 and exponents <= 30, cheap enough for the Puiseux oracle."""
    return corpus(2024, 40, max_n=8, max_exp=30)


@pytest.fixture(scope="session")
def full_corpus():
    return corpus(7, 100)
