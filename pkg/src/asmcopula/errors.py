"""Exception types shared across the package."""


class AsmCopulaError(Exception):
    """Base class for all library errors."""


class GridShapeError(AsmCopulaError, ValueError):
    """Malformed dimensions, index bounds, or entry types."""


class InvalidInputError(AsmCopulaError, ValueError):
    """Input rejected by a validation gate (not an ABM, not a quasi-copula, ...)."""


class InternalCheckError(AsmCopulaError, RuntimeError):
    """A verify-on-construct or solver self-check failed.

    This is raised when a quantity that is guaranteed by construction fails
    its own validity check, or when a solver produces a point that does not
    re-substitute into its constraints.  It always indicates a bug (or a
    misread pattern), never bad user input.
    """
