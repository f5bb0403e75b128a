"""Exception hierarchy shared by all modules."""


class GnprobError(Exception):
    """Base class for every error raised by this package."""


class ValidationError(GnprobError, ValueError):
    """A composite object (partition, measure, assessment, file) violates its invariants."""


class UniverseMismatchError(GnprobError, ValueError):
    """Operands are bound to different universes."""


class EmptyConditioningError(GnprobError, ValueError):
    """An operation required a nonempty (conditioning) event."""


class TrivialTargetError(GnprobError, ValueError):
    """Extension machinery was asked about a trivial conditional event.

    The value of a trivial conditional event is forced by the necessary
    consistency conditions: 0 when the conditioned part is empty, 1 when
    it equals the conditioning event.
    """


class EnumerationLimitError(GnprobError, ValueError):
    """An exhaustive enumeration was refused because the instance is too large."""


class UnsupportedOperationError(GnprobError, ValueError):
    """The requested operation is outside the supported scope."""
