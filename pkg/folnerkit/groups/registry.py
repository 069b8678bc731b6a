"""Resolve group models from configuration identifiers."""

from functools import lru_cache

from folnerkit.core.constants import GROUP_MODELS
from folnerkit.core.exceptions import ConfigurationError
from folnerkit.groups.abelian import IntegerLattice
from folnerkit.groups.base import GroupModel
from folnerkit.groups.heisenberg import HeisenbergGroup
from folnerkit.groups.lamplighter import LamplighterGroup


@lru_cache(maxsize=None)
def get_model(model_id: str) -> GroupModel:
    """Return the (shared) model for an identifier such as "zd:2" or "heis3"."""
    key = model_id.strip().lower()
    if key.startswith("zd:"):
        try:
            dim = int(key.split(":", 1)[1])
        except ValueError as e:
            raise ConfigurationError(f"Invalid lattice dimension in {model_id!r}") from e
        if dim < 1:
            raise ConfigurationError(f"Invalid lattice dimension in {model_id!r}")
        return IntegerLattice(dim)
    if key == "heis3":
        return HeisenbergGroup()
    if key == "lamplighter":
        return LamplighterGroup()
    known = ", ".join(f"{k} ({v})" for k, v in GROUP_MODELS.items())
    raise ConfigurationError(f"Unknown group model: {model_id!r}; expected one of {known}")
