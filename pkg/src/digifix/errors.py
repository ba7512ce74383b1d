"""Exception types shared across the package."""


class DigifixError(Exception):
    """Base class for package-specific failures."""


class BudgetExceededError(DigifixError):
    """A search exceeded its node/map budget. Results would be partial,
    so the operation fails hard instead of returning an inexact answer."""

    def __init__(self, message, nodes=None):
        super().__init__(message)
        self.nodes = nodes


class FixedPointPropertyError(DigifixError):
    """Raised when a fixed-point-free map is requested but cannot be built
    because the image has no adjacent pair (e.g. a single point)."""


class ImageFormatError(DigifixError):
    """An image or map file failed to parse or violated an invariant."""


class PropertyViolationError(DigifixError):
    """A structural theorem that the code checks at runtime was violated.
    Seeing this means either a bug or a genuine counterexample."""
