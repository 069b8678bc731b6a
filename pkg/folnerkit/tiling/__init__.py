"""ε-quasi-tilings: parameter schedule, construction, certificates, cores and subfamilies."""

from folnerkit.tiling.construction import quasi_tile
from folnerkit.tiling.cores import TileCoreSet, extract_cores
from folnerkit.tiling.family import QuasiTiling, TileFamily
from folnerkit.tiling.nesting import nest_translates
from folnerkit.tiling.parameters import select_tile_indices, select_tile_parameters
from folnerkit.tiling.partition import SubfamilyPartition, partition_subfamilies
from folnerkit.tiling.verification import (
    EpsDisjointResult,
    verify_eps_disjoint,
    verify_quasi_tiling,
)

__all__ = [
    "EpsDisjointResult",
    "QuasiTiling",
    "SubfamilyPartition",
    "TileCoreSet",
    "TileFamily",
    "extract_cores",
    "nest_translates",
    "partition_subfamilies",
    "quasi_tile",
    "select_tile_indices",
    "select_tile_parameters",
    "verify_eps_disjoint",
    "verify_quasi_tiling",
]
