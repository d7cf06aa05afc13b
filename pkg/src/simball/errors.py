"""Exception hierarchy shared across the package."""


class SimballError(Exception):
    """Base class for all package errors."""


class ArgumentError(SimballError, ValueError):
    """An argument is outside its documented domain."""


class ModeError(SimballError, TypeError):
    """Operation invoked with the wrong arithmetic mode (exact vs float)."""


class MalformedInputError(SimballError, ValueError):
    """External input (JSON simplex, etc.) does not match the wire format."""


class DegenerateSimplexError(SimballError, ValueError):
    """Vertices do not span the ambient space (det at or below threshold)."""


class RankError(SimballError, ValueError):
    """Point set does not affinely span the ambient space."""


class ConvergenceError(SimballError, RuntimeError):
    """Iterative solver ran out of iterations; carries the last iterate."""

    def __init__(self, message, last_iterate=None):
        super().__init__(message)
        self.last_iterate = last_iterate


class SamplingError(SimballError, RuntimeError):
    """Rejection sampling failed too many times in a row."""


class CampaignIOError(SimballError, OSError):
    """Campaign output stream failed; results on disk are partial."""


class NoSuitableFaceError(SimballError, RuntimeError):
    """Exhaustive face search found no qualifying face.

    For inputs inside the unit ball this contradicts a proved statement,
    so the caller escalates to an exact recheck and, if the failure
    survives, records a critical finding (implementation bug until shown
    otherwise).
    """

    def __init__(self, message, finding=None):
        super().__init__(message)
        self.finding = finding


class InternalInvariantError(SimballError, RuntimeError):
    """A condition that is mathematically impossible was observed: a bug."""
