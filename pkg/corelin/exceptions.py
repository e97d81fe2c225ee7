class RejectedInput(ValueError):
    """Raised when an input violates a documented invariant."""


class DimensionMismatch(RejectedInput):
    """Raised when operand dimensions are incompatible."""
