"""Observables with finite dependence windows, and Birkhoff sums along finite sets."""

from fractions import Fraction
from typing import Dict, Mapping, Optional, Sequence, Tuple

import structlog

from folnerkit.core.exceptions import ConfigurationError, EmptySetError, WindowError
from folnerkit.core.numeric import Number, to_fraction
from folnerkit.groups.base import GroupModel
from folnerkit.groups.subsets import FiniteSubset, singleton
from folnerkit.shift.patterns import Pattern

logger = structlog.get_logger()


class Observable:
    """φ(x) = table[x restricted to W₀], with W₀ a finite window containing the identity.

    Values are held as exact rationals; floats enter through their decimal repr.
    """

    def __init__(
        self,
        window: FiniteSubset,
        table: Mapping[Tuple[int, ...], Number],
        name: str = "phi",
    ):
        if window.model.identity() not in window:
            raise ConfigurationError("observable window must contain the identity")
        if not table:
            raise ConfigurationError("observable table is empty")
        for key in table:
            if len(key) != len(window):
                raise ConfigurationError(
                    f"table key {key} does not match a {len(window)}-site window"
                )
        self.window = window
        self.name = name
        self.table: Dict[Tuple[int, ...], Fraction] = {
            tuple(k): to_fraction(v) for k, v in table.items()
        }

    @classmethod
    def from_symbol_values(
        cls, model: GroupModel, values: Sequence[Number], name: str = "phi"
    ) -> "Observable":
        """An observable reading only the identity coordinate: φ(x) = values[x_e]."""
        window = singleton(model, model.identity())
        return cls(window, {(a,): v for a, v in enumerate(values)}, name=name)

    @property
    def model(self) -> GroupModel:
        return self.window.model

    @property
    def local(self) -> bool:
        """True when φ depends on the identity coordinate only."""
        return len(self.window) == 1

    def symbol_values(self) -> Tuple[Fraction, ...]:
        if not self.local:
            raise ConfigurationError(f"{self.name} depends on {len(self.window)} coordinates")
        size = max(k[0] for k in self.table) + 1
        return tuple(self.table.get((a,), Fraction(0)) for a in range(size))

    def sup_norm(self) -> Fraction:
        return max(abs(v) for v in self.table.values())

    def evaluate(self, x: Pattern, g: Optional[tuple] = None) -> Fraction:
        """φ(g·x), reading x on W₀g."""
        model = self.model
        mul = model.mul
        g = model.identity() if g is None else g
        key = []
        for w in self.window:
            h = mul(w, g)
            s = x.get(h)
            if s < 0:
                raise WindowError(f"{self.name} needs the pattern at {h!r}")
            key.append(s)
        try:
            return self.table[tuple(key)]
        except KeyError:
            raise WindowError(f"{self.name} undefined on local pattern {tuple(key)}") from None

    def __repr__(self) -> str:
        return f"Observable({self.name!r}, window={len(self.window)})"


def birkhoff_sum(phi: Observable, x: Pattern, f: FiniteSubset) -> Fraction:
    """S_Fφ(x) = Σ_{g in F} φ(g·x), exactly."""
    if f.model.name != phi.model.name:
        raise ConfigurationError("observable and set live on different groups")
    return sum((phi.evaluate(x, g) for g in f), Fraction(0))


def birkhoff_avg(phi: Observable, x: Pattern, f: FiniteSubset) -> Fraction:
    """A_Fφ(x) = S_Fφ(x) / |F|."""
    if not f:
        raise EmptySetError("Birkhoff average over an empty set")
    return birkhoff_sum(phi, x, f) / len(f)
