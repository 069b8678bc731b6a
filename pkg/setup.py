#!/usr/bin/env python
"""setup.py shim for `pip install -e .` on pip < 21.3.

Metadata lives in pyproject.toml; name, version and the required
dependencies are read from there.
"""

import re
try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib
from pathlib import Path

from setuptools import find_packages, setup

_PYPROJECT = Path(__file__).parent / "pyproject.toml"


def _poetry_section() -> dict:
    with open(_PYPROJECT, "rb") as f:
        return tomllib.load(f)["tool"]["poetry"]


def _requirement(name: str, constraint) -> str:
    if isinstance(constraint, dict):
        constraint = constraint.get("version", "")
    # poetry caret constraints have no pip spelling; fall back to a lower bound
    match = re.match(r"^\^(.+)$", constraint)
    if match:
        constraint = f">={match.group(1)}"
    return f"{name}{constraint}"


_poetry = _poetry_section()

setup(
    name=_poetry["name"],
    version=_poetry["version"],
    packages=find_packages(exclude=["tests*", "docs*"]),
    python_requires=">=3.10",
    install_requires=[
        _requirement(name, constraint)
        for name, constraint in _poetry["dependencies"].items()
        if name != "python"
    ]
    + ['tomli>=1.1.0; python_version < "3.11"'],
    entry_points={
        "console_scripts": [
            "folnerkit=folnerkit.cli.main:cli",
        ],
    },
)
