"""Exception types shared across the library."""

from __future__ import annotations


class RainbowPlanarError(Exception):
    """Base class for all library errors."""


class NonPlanarError(RainbowPlanarError):
    """The edge list admits no planar embedding."""


class InvalidRotationError(RainbowPlanarError):
    """A rotation system fails validation (wrong incidences or genus != 0)."""


class NotTriangulationError(RainbowPlanarError):
    """An operation requiring a plane triangulation got something else."""


class InvalidAnchorError(RainbowPlanarError):
    """The designated anchor edge is not on the outer boundary."""


class InvalidParamError(RainbowPlanarError):
    """A construction parameter is out of its admissible set."""


class RangeMismatchError(InvalidParamError):
    """The target order n falls outside the branch the builder covers."""


class HostRejectedError(RainbowPlanarError):
    """A supplied host graph fails its required property checks."""


class PatternTooLargeError(RainbowPlanarError):
    """The search pattern exceeds the configured budget."""


class TooLargeError(RainbowPlanarError):
    """The instance exceeds the exact-search budget."""


class EmptyFamilyError(RainbowPlanarError):
    """No catalog triangulation on n vertices contains the pattern."""


class OutOfRangeError(RainbowPlanarError):
    """Bound formula evaluated outside its stated range."""


class FormatError(RainbowPlanarError):
    """A text artifact (graph, coloring, certificate) failed to parse."""
