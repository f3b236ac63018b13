"""Single source of the package version (kept import-light: dataset
metadata stamps it without pulling in the full package)."""

__version__ = "0.1.0"
