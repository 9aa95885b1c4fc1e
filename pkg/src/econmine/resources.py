"""Access to the data files bundled with the package."""

from importlib.resources import files
from pathlib import Path


def data_path(name: str) -> Path:
    """Filesystem path of a bundled default data file."""
    return Path(str(files("econmine") / "data" / name))
