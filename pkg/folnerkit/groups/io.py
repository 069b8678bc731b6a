"""Line-oriented text format for subsets and patterns.

One element per line, comma-separated integer coordinates. Patterns append
the symbol as a final column. Blank lines and lines starting with '#' are
ignored.
"""

from pathlib import Path
from typing import Dict, Iterable, List, Tuple, Union

from folnerkit.core.exceptions import ConfigurationError, ModelMismatchError
from folnerkit.groups.base import Element, GroupModel
from folnerkit.groups.subsets import FiniteSubset

PathLike = Union[str, Path]


def _rows(text: str) -> Iterable[Tuple[int, List[int]]]:
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        try:
            yield lineno, [int(part) for part in line.split(",")]
        except ValueError as e:
            raise ConfigurationError(f"line {lineno}: not integer coordinates: {raw!r}") from e


def parse_subset(model: GroupModel, text: str) -> FiniteSubset:
    elements = []
    for lineno, coords in _rows(text):
        try:
            elements.append(model.parse(coords))
        except (ValueError, ModelMismatchError) as e:
            raise ConfigurationError(f"line {lineno}: {e}") from e
    return FiniteSubset(model, elements)


def format_subset(subset: FiniteSubset) -> str:
    fmt = subset.model.format
    return "".join(",".join(str(c) for c in fmt(g)) + "\n" for g in subset)


def parse_pattern_rows(model: GroupModel, text: str) -> Dict[Element, int]:
    values: Dict[Element, int] = {}
    for lineno, coords in _rows(text):
        if len(coords) < 2:
            raise ConfigurationError(f"line {lineno}: pattern rows need coordinates and a symbol")
        try:
            g = model.parse(coords[:-1])
        except (ValueError, ModelMismatchError) as e:
            raise ConfigurationError(f"line {lineno}: {e}") from e
        if g in values:
            raise ConfigurationError(f"line {lineno}: duplicate site {coords[:-1]}")
        values[g] = coords[-1]
    return values


def format_pattern_rows(model: GroupModel, values: Dict[Element, int]) -> str:
    lines = []
    for g in sorted(values):
        coords = model.format(g) + [values[g]]
        lines.append(",".join(str(c) for c in coords) + "\n")
    return "".join(lines)


def load_subset(model: GroupModel, path: PathLike) -> FiniteSubset:
    return parse_subset(model, Path(path).read_text(encoding="utf-8"))


def dump_subset(subset: FiniteSubset, path: PathLike) -> None:
    Path(path).write_text(format_subset(subset), encoding="utf-8")
