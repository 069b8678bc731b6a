"""Test configuration: quiet logging and shared fixtures."""

import os

os.environ.setdefault("FOLNERKIT_RUN_LOG_LEVEL", "WARNING")

from fractions import Fraction  # noqa: E402

import pytest  # noqa: E402

from folnerkit.groups.folner import folner_sequence  # noqa: E402
from folnerkit.groups.registry import get_model  # noqa: E402
from folnerkit.groups.subsets import FiniteSubset  # noqa: E402
from folnerkit.shift.measures import BernoulliMeasure  # noqa: E402
from folnerkit.shift.observables import Observable  # noqa: E402


@pytest.fixture
def z1():
    return get_model("zd:1")


@pytest.fixture
def z2():
    return get_model("zd:2")


@pytest.fixture
def boxes():
    return folner_sequence("zd:1")


@pytest.fixture
def coin():
    return BernoulliMeasure([Fraction(1, 2), Fraction(1, 2)])


@pytest.fixture
def frequency(z1):
    """φ(x) = x₀ on {0, 1}."""
    return Observable.from_symbol_values(z1, [0, 1])


@pytest.fixture
def interval(z1):
    def make(start, stop):
        return FiniteSubset(z1, ((i,) for i in range(start, stop)))

    return make
