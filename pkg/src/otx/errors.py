"""Exception hierarchy shared by every module."""


class OtxError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(OtxError, ValueError):
    """A value lies outside the domain of the operation."""


class InconsistentFamilyError(OtxError):
    """Per-position factored outputs do not fit together."""

    def __init__(self, position, message):
        super().__init__(f"position {position}: {message}")
        self.position = position


class IncompleteError(OtxError):
    """Gaps remain after merging every position."""


class ValidationError(OtxError, ValueError):
    """A machine description violates a structural invariant."""


class CopylessError(ValidationError):
    """A register update uses some register as a source twice."""


class NonterminationError(OtxError):
    """A two-way machine loops, runs out of fuel or gets stuck."""


class TableError(OtxError):
    """A characteristic table is malformed or not a congruence."""


class PreconditionError(OtxError):
    """An operation was called on an argument outside its precondition."""


class ResourceError(OtxError):
    """A configured size cap was exceeded."""


class ProtocolError(OtxError):
    """A teacher gave answers that contradict each other."""


class MalformedLanguageError(OtxError):
    """A DFA does not accept a language of the encoded-table shape."""


class SchemaError(OtxError, ValueError):
    """A machine document does not match the file schema."""
