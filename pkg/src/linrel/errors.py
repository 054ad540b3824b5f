"""Exception types shared across the package."""


class FieldError(ValueError):
    """Scalar from the wrong field, division by zero, or a bad field declaration."""


class ShapeError(ValueError):
    """Matrix or relation dimensions do not fit the requested operation."""


class InconsistencyError(AssertionError):
    """An internal invariant failed.

    Raised when a construction that is guaranteed by a theorem does not
    verify, e.g. a decomposition that fails to reconstruct its input. This
    always means a bug, never bad input.
    """
