"""Exact-number helpers shared by all modules."""

import math
from fractions import Fraction
from typing import Iterable, Tuple, Union

Number = Union[int, float, str, Fraction]


def to_fraction(value: Number) -> Fraction:
    """Convert a user-facing number to an exact rational.

    Floats go through their shortest repr so that 0.7 becomes 7/10.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    return Fraction(str(value))


def probability_vector(values: Iterable[Number]) -> Tuple[Fraction, ...]:
    """Validate and convert a probability vector to exact rationals."""
    probs = tuple(to_fraction(v) for v in values)
    if len(probs) < 2:
        raise ValueError("probability vector needs at least two entries")
    if any(p < 0 for p in probs):
        raise ValueError(f"negative probability in {probs}")
    if sum(probs) != 1:
        raise ValueError(f"probabilities sum to {float(sum(probs))}, not 1")
    return probs


def log_fraction(value: Fraction) -> float:
    """Natural log of a positive rational without underflow for tiny values."""
    if value <= 0:
        raise ValueError(f"log of nonpositive value {value}")
    return math.log(value.numerator) - math.log(value.denominator)
