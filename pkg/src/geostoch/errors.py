"""Exception types shared across the library."""


class GeostochError(Exception):
    """Base class for all geostoch errors."""


class InputError(GeostochError, ValueError):
    """Malformed or inconsistent input: wrong shape, bad config value,
    non-tangent vector beyond tolerance."""


class DomainError(GeostochError, ValueError):
    """Input outside the mathematical domain of an operation, e.g. a point
    in the cut locus of a log map, or a matrix log of a non-SPD matrix."""


class UnsupportedOperationError(GeostochError):
    """Operation deliberately not provided for the requested manifold or
    parameter structure."""


class DegenerateInputError(GeostochError, ValueError):
    """Numerically degenerate input: rank-deficient matrix, empty or
    collapsed sample set."""


class SimulationDivergedError(GeostochError, RuntimeError):
    """Integration produced a non-finite state.  Carries the failing step."""

    def __init__(self, step, message=None):
        self.step = step
        super().__init__(message or f"state became non-finite at step {step}")
