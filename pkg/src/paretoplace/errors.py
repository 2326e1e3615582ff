"""Exception hierarchy shared across the package."""


class ParetoPlaceError(Exception):
    """Base class for all library errors."""


class ValidationError(ParetoPlaceError):
    """Invalid user-supplied value. Optionally names the offending field."""

    def __init__(self, message: str, field: str | None = None):
        super().__init__(message)
        self.field = field


class DegeneratePositionError(ParetoPlaceError):
    """Position too close to an anchor point for an angle to be defined."""


class OutOfBoundsError(ParetoPlaceError):
    """Position outside the decision box."""


class IncompatibleCandidatesError(ParetoPlaceError):
    """Candidates with mismatched objective dimensions."""


class EmptyInputError(ParetoPlaceError):
    """An operation that requires a non-empty collection received none."""


class ConfigurationError(ValidationError):
    """Solver or simulation configuration violates its invariants."""


class InfeasibleSearchError(ParetoPlaceError):
    """Search ended without ever visiting a feasible point."""


class StaleSelectionError(ParetoPlaceError):
    """Selection refers to a candidate outside the latest round."""

    def __init__(self, message: str, current_round: int | None = None):
        super().__init__(message)
        self.current_round = current_round


class OrderingError(ParetoPlaceError):
    """Session operation invoked before its prerequisite step."""


class SessionBusyError(ParetoPlaceError):
    """A round is already in flight for this session."""


class UnknownSessionError(ParetoPlaceError):
    """No session with the given id."""
