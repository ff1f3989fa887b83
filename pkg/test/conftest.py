import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from pentagram.polygon import CORRUGATED, TwistedPolygon, random_generic_polygon  # noqa: E402


@pytest.fixture(scope="session")
def coeffs_3_7():
    return random_generic_polygon(3, 7, seed=1)


@pytest.fixture(scope="session")
def poly_3_7(coeffs_3_7):
    return TwistedPolygon.from_coefficients(coeffs_3_7)


@pytest.fixture(scope="session")
def coeffs_3_5():
    return random_generic_polygon(3, 5, seed=1)


@pytest.fixture(scope="session")
def corrugated_3_7():
    return random_generic_polygon(3, 7, seed=1, zero_slots=CORRUGATED.zero_slots(3))


@pytest.fixture(scope="session")
def corrugated_3_5():
    return random_generic_polygon(3, 5, seed=1, zero_slots=CORRUGATED.zero_slots(3))
