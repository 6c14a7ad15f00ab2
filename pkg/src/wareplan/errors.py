"""Exception hierarchy shared across the engine."""


class WareplanError(Exception):
    """Base class for all engine errors."""


class InvariantViolation(WareplanError):
    """A domain object broke one of its structural invariants."""


class ParseError(WareplanError):
    """A file or text payload could not be parsed."""


class DegenerateSpace(WareplanError):
    """The space has no storable cells to search over."""


class OffsetOutOfRange(WareplanError):
    """Carve offset falls outside the block store's perpendicular extent."""


class StripNotContainedInBlockStore(WareplanError):
    """Reserved: strips over ragged stores are clipped to the store's cells,
    so carving never raises this in practice."""


class NodeLimitExceeded(WareplanError):
    """Exhaustive enumeration visited more nodes than allowed."""


class NoPickFaces(WareplanError):
    """Connectivity is undefined for a layout with zero pick faces."""


class JobCancelled(WareplanError):
    """A sweep was cancelled before all runs completed."""


class DimensionMismatch(WareplanError):
    """Imported grid dimensions do not match the space."""


class MaskConflict(WareplanError):
    """Imported grid contradicts the space's fixed masks."""


class UnknownRefinerId(WareplanError):
    """Refiner pipeline references an unknown refiner kind."""
