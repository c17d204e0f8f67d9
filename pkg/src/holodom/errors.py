"""Shared exception types.

DomainError covers precondition and validation failures (CLI exit code 1),
NumericalError covers convergence and blow-up failures (CLI exit code 2).
"""


class HolodomError(Exception):
    pass


class DomainError(HolodomError, ValueError):
    """Input violates a documented precondition."""


class NotHolomorphicError(DomainError):
    """A conjugated field keeps negative powers that do not cancel."""


class DegenerateFiberError(DomainError):
    """All three fiber coefficients vanish at the requested point."""


class TypeCFiberError(DomainError):
    """The fiber is a full line (q1 vanishes); no period exists there."""


class NumericalError(HolodomError, RuntimeError):
    """An iteration or integration failed to converge."""


class EscapeError(NumericalError):
    """Trajectory left every bounded region before the segment end.

    tau_reached is the fraction of the current segment that was covered,
    segment_index identifies the polyline segment (0-based).
    """

    def __init__(self, message, tau_reached, segment_index=0):
        super().__init__(message)
        self.tau_reached = tau_reached
        self.segment_index = segment_index
