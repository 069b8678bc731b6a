"""Tile families and quasi-tilings."""

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from folnerkit.core.exceptions import ConfigurationError, EmptySetError
from folnerkit.groups.base import Element
from folnerkit.groups.folner import FolnerSequence
from folnerkit.groups.subsets import FiniteSubset, translate_right
from folnerkit.models.tiling import TilingCertificate, TilingRecord


@dataclass
class TileFamily:
    """A_1, ..., A_k in increasing size, or indices n_1 < ... < n_k into `sequence`.

    Indexed families may be far too large to enumerate; shapes are only
    materialised on demand.
    """

    sequence: Optional[FolnerSequence] = None
    indices: Optional[Tuple[int, ...]] = None
    explicit: Optional[Tuple[FiniteSubset, ...]] = None
    delta: Optional[Fraction] = None

    def __post_init__(self) -> None:
        if self.explicit is None and (self.sequence is None or self.indices is None):
            raise ConfigurationError("tile family needs explicit shapes or sequence indices")
        if self.indices is not None:
            self.indices = tuple(self.indices)
            if not self.indices:
                raise ConfigurationError("tile family is empty")
            if any(a >= b for a, b in zip(self.indices, self.indices[1:])):
                raise ConfigurationError(f"tile indices must increase: {self.indices}")
        if self.explicit is not None:
            self.explicit = tuple(self.explicit)
            if not self.explicit:
                raise ConfigurationError("tile family is empty")
            for shape in self.explicit:
                if not shape:
                    raise EmptySetError("tile shapes must be nonempty")

    @classmethod
    def from_shapes(
        cls, shapes: Sequence[FiniteSubset], delta: Optional[Fraction] = None
    ) -> "TileFamily":
        return cls(explicit=tuple(shapes), delta=delta)

    @classmethod
    def from_indices(
        cls, sequence: FolnerSequence, indices: Sequence[int], delta: Optional[Fraction] = None
    ) -> "TileFamily":
        return cls(sequence=sequence, indices=tuple(indices), delta=delta)

    def __len__(self) -> int:
        return len(self.explicit) if self.explicit is not None else len(self.indices or ())

    @property
    def shapes(self) -> Tuple[FiniteSubset, ...]:
        if self.explicit is None:
            assert self.sequence is not None and self.indices is not None
            self.explicit = tuple(self.sequence.get(n) for n in self.indices)
        return self.explicit

    def sizes(self) -> List[int]:
        if self.explicit is None and self.sequence is not None and self.indices is not None:
            return [self.sequence.size(n) for n in self.indices]
        return [len(shape) for shape in self.shapes]


@dataclass
class QuasiTiling:
    """Target A, tile family, one centre set C_i per shape and the certificate.

    `representatives` holds the disjoint sets reserved during construction,
    keyed by (tile index, centre); they are a hint only and verification
    recomputes its own witnesses.
    """

    target: FiniteSubset
    tiles: TileFamily
    centers: Tuple[FiniteSubset, ...]
    epsilon: Fraction
    representatives: Dict[Tuple[int, Element], FiniteSubset]
    certificate: Optional[TilingCertificate] = None
    precondition_met: Optional[bool] = None

    def translates(self) -> Iterator[Tuple[int, Element, FiniteSubset]]:
        """(i, c, A_i c) for every placed translate, tile by tile in centre order."""
        for i, (shape, centers) in enumerate(zip(self.tiles.shapes, self.centers)):
            for c in centers:
                yield i, c, translate_right(shape, c)

    def block(self, i: int) -> FiniteSubset:
        """A_i C_i."""
        members = set()
        for j, _, placed in self.translates():
            if j == i:
                members |= placed.members
        return FiniteSubset(self.target.model, members, check=False)

    def placed_count(self) -> int:
        return sum(len(c) for c in self.centers)

    def to_record(self, target_name: str = "A") -> TilingRecord:
        if self.certificate is None:
            raise ValueError("tiling has not been certified")
        fmt = self.target.model.format
        return TilingRecord(
            target=target_name,
            target_size=len(self.target),
            epsilon=str(self.epsilon),
            tile_sizes=[len(s) for s in self.tiles.shapes],
            tile_indices=list(self.tiles.indices) if self.tiles.indices else None,
            centers={i: [fmt(c) for c in cs] for i, cs in enumerate(self.centers)},
            certificate=self.certificate,
            precondition_met=self.precondition_met,
        )
