"""folnerkit - amenable-group large deviations at desk scale."""

from folnerkit.version import VERSION

__version__ = VERSION
__all__ = ["__version__"]
