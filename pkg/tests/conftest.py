import pytest

from specweyl.model import harmonic, regular
from specweyl.weyl import FundamentalFrame


@pytest.fixture(scope="session")
def harmonic_frame():
    return FundamentalFrame(harmonic(), 0.5)


@pytest.fixture(scope="session")
def q0_frame():
    return FundamentalFrame(regular(0.0, 1.0), 0.5)
