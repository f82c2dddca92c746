import pytest

# unit tests run Euler products at a smaller cutoff than the defaults;
# the acceptance suite uses the full spec settings
UNIT_PMAX = 10**6


@pytest.fixture(scope="session")
def pmax():
    return UNIT_PMAX
