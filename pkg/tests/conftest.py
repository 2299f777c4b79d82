import pytest
from hypothesis import settings

from ecbits.curve import Curve
from ecbits.field import field

settings.register_profile("reproducible", derandomize=True)
settings.load_profile("reproducible")


@pytest.fixture(scope="session")
def micro_curve():
    """The fully hand-verified curve y^2 = x^3 + x + 1 over F_7 (order 5)."""
    return Curve(field(7), 1, 1)


@pytest.fixture(scope="session")
def micro_points(micro_curve):
    return micro_curve.enumerate_points()
