"""Exception hierarchy.

Every error raised by the library derives from :class:`LoopAlgError`.  The
four intermediate classes map one-to-one onto CLI exit codes.
"""


class LoopAlgError(Exception):
    exit_code = 1


class InvalidInput(LoopAlgError, ValueError):
    exit_code = 1


class CapExceeded(LoopAlgError):
    exit_code = 2


class OracleMismatch(LoopAlgError):
    exit_code = 3


class InternalAssertion(LoopAlgError, AssertionError):
    exit_code = 4


class GhostVertex(InvalidInput):
    def __init__(self, vertex):
        super().__init__(f"vertex {vertex} spans no face (ghost vertex)")
        self.vertex = vertex


class OutOfRange(InvalidInput):
    pass


class TooLarge(CapExceeded):
    pass


class DomainWarning(UserWarning):
    """A formula was evaluated outside the hypotheses that make it meaningful."""
