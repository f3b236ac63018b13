"""Exception types shared across the package."""

from __future__ import annotations

__all__ = [
    "DarksqueezeError",
    "CapacityError",
    "DegenerateDenominatorError",
    "NoCrossingError",
    "NonPhysicalStateError",
    "FlatTraceError",
    "ConfigError",
]


class DarksqueezeError(Exception):
    """Base class for errors raised by this package."""


class CapacityError(DarksqueezeError):
    """A brute-force computation would exceed its hard memory/size guard."""


class DegenerateDenominatorError(DarksqueezeError):
    """The planar squeezing reference denominator is not positive.

    The ratio criterion is undefined there; callers that can tolerate the
    degenerate case should catch this and branch.
    """


class NoCrossingError(DarksqueezeError):
    """No squeezing-loss crossing exists on the searched interval."""


class NonPhysicalStateError(DarksqueezeError):
    """A density matrix failed a trace/Hermiticity/positivity check."""


class FlatTraceError(DarksqueezeError):
    """A time trace has no interior structure to optimize over."""


class ConfigError(DarksqueezeError):
    """Bad configuration input (unknown key, malformed axis, bad value)."""
