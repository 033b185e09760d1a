"""Exception types shared across the package.

The CLI maps these onto process exit codes: configuration and geometry
problems exit with 2, precision-budget violations with 3.
"""


class DomainError(ValueError):
    """Argument outside the mathematical domain of an operation."""


class RangeError(ArithmeticError):
    """Result not representable (overflow of a Hankel recurrence or deep
    lower-half-plane evaluation)."""


class GeometryError(ValueError):
    """Ray/line configuration violates a hypothesis needed for recovery
    (direction parallel to the incident wave, degenerate pairing offset,
    mismatched ray pair, malformed input data)."""


class PrecisionError(RuntimeError):
    """Requested recovery order exceeds what the data's precision supports,
    or the amplification detector found runaway growth."""

    def __init__(self, message: str, order: int | None = None):
        super().__init__(message)
        self.order = order


class RefinementError(RuntimeError):
    """A root-refinement iteration failed to converge."""
