"""Exception hierarchy shared by every layer of the toolkit."""


class RootSystemError(Exception):
    """Base class for all toolkit errors."""


class InvalidInputError(RootSystemError, ValueError):
    """Input data is structurally malformed (empty, duplicated, wrong shape)."""


class AmbiguousReflectionError(RootSystemError):
    """An odd reflection is undefined: both or neither of β±α lie in R."""


class DomainError(RootSystemError, ValueError):
    """An operation was called outside its mathematical domain."""


class NotApplicableError(RootSystemError):
    """The operation does not apply to this kind of presentation."""


class UnsupportedTagError(RootSystemError, ValueError):
    """Unknown type label or parameters outside the valid range."""


class UnclassifiableError(RootSystemError):
    """No catalog type matches the input."""

    def __init__(self, message: str, decision_point: str = "") -> None:
        super().__init__(message)
        self.decision_point = decision_point


class DocumentParseError(RootSystemError, ValueError):
    """A system document could not be parsed; the message carries the location."""


class OracleLimitError(RootSystemError):
    """Input exceeds the size limit of a brute-force verifier."""
