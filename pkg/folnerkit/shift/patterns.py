"""Finite patterns: a window of group elements and a symbol at each site."""

from pathlib import Path
from typing import Dict, Iterator, Mapping, Sequence, Tuple, Union

from folnerkit.core.exceptions import ModelMismatchError, WindowError
from folnerkit.groups.base import Element, GroupModel
from folnerkit.groups.io import format_pattern_rows, parse_pattern_rows
from folnerkit.groups.subsets import FiniteSubset


class Pattern:
    """A total map from a finite window to the alphabet {0, ..., q-1}.

    Symbols are stored aligned with the window's canonical order, so two
    patterns on the same window compare by their symbol tuples.
    """

    __slots__ = ("window", "symbols", "_lookup")

    def __init__(self, window: FiniteSubset, symbols: Sequence[int]):
        if len(symbols) != len(window):
            raise WindowError(
                f"pattern has {len(symbols)} symbols for a window of {len(window)} sites"
            )
        self.window = window
        self.symbols: Tuple[int, ...] = tuple(int(s) for s in symbols)
        self._lookup: Dict[Element, int] = dict(zip(window.elements, self.symbols))

    @classmethod
    def from_mapping(cls, model: GroupModel, values: Mapping[Element, int]) -> "Pattern":
        window = FiniteSubset(model, values.keys())
        return cls(window, [values[g] for g in window])

    @classmethod
    def constant(cls, window: FiniteSubset, symbol: int) -> "Pattern":
        return cls(window, [symbol] * len(window))

    @property
    def model(self) -> GroupModel:
        return self.window.model

    def __len__(self) -> int:
        return len(self.symbols)

    def __getitem__(self, g: Element) -> int:
        try:
            return self._lookup[g]
        except KeyError:
            raise WindowError(f"pattern is not defined at {g!r}") from None

    def get(self, g: Element, default: int = -1) -> int:
        return self._lookup.get(g, default)

    def items(self) -> Iterator[Tuple[Element, int]]:
        return iter(zip(self.window.elements, self.symbols))

    def as_dict(self) -> Dict[Element, int]:
        return dict(self._lookup)

    def defined_on(self, window: FiniteSubset) -> bool:
        return window.members <= self.window.members

    def restrict(self, window: FiniteSubset) -> "Pattern":
        """The restriction to a sub-window."""
        if window.model.name != self.model.name:
            raise ModelMismatchError(
                f"window over {window.model.name}, pattern over {self.model.name}"
            )
        missing = window.members - self.window.members
        if missing:
            sample = sorted(missing)[:3]
            raise WindowError(f"pattern is undefined on {len(missing)} sites, e.g. {sample}")
        return Pattern(window, [self._lookup[g] for g in window])

    def key(self, window: FiniteSubset) -> Tuple[int, ...]:
        """Symbols on `window` in canonical order (the cylinder label)."""
        return self.restrict(window).symbols

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Pattern):
            return NotImplemented
        return self.window == other.window and self.symbols == other.symbols

    def __hash__(self) -> int:
        return hash((self.window, self.symbols))

    def __repr__(self) -> str:
        more = "..." if len(self) > 8 else ""
        return f"Pattern(size={len(self)}, symbols={self.symbols[:8]}{more})"


def shift_pattern(g: Element, x: Pattern) -> Pattern:
    """The shifted pattern g·x, with (g·x)_h = x_{hg}, on the window W g⁻¹."""
    model = x.model
    mul, inv = model.mul, model.inv
    g_inv = inv(g)
    values = {mul(w, g_inv): s for w, s in x.items()}
    window = FiniteSubset(model, values.keys(), check=False)
    return Pattern(window, [values[h] for h in window])


def parse_pattern(model: GroupModel, text: str) -> Pattern:
    return Pattern.from_mapping(model, parse_pattern_rows(model, text))


def load_pattern(model: GroupModel, path: Union[str, Path]) -> Pattern:
    return parse_pattern(model, Path(path).read_text(encoding="utf-8"))


def dump_pattern(pattern: Pattern, path: Union[str, Path]) -> None:
    Path(path).write_text(format_pattern_rows(pattern.model, pattern.as_dict()), encoding="utf-8")
