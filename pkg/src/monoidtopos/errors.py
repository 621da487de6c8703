"""Exception hierarchy shared by every module.

The cli maps ValidationError subclasses to exit code 2 and SizeTooLarge to 3.
"""


class WorkbenchError(Exception):
    pass


class ValidationError(WorkbenchError):
    """Input rejected; `witness` carries whatever made it fail."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class NotAssociative(ValidationError):
    pass


class BadIdentity(ValidationError):
    pass


class OutOfRange(ValidationError):
    pass


class NotIdempotent(ValidationError):
    pass


class MonoidMismatch(ValidationError):
    pass


class NotEquivariant(ValidationError):
    pass


class InvalidFilter(ValidationError):
    pass


class InvalidTopology(ValidationError):
    pass


class MalformedCategory(ValidationError):
    pass


class ParseError(ValidationError):
    pass


class UnknownSystem(ValidationError):
    pass


class OracleViolation(WorkbenchError):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class SizeTooLarge(WorkbenchError):
    def __init__(self, message, size=None, cap=None):
        super().__init__(message)
        self.size = size
        self.cap = cap


class EmptyGenerators(ValidationError):
    pass


class InvalidAction(ValidationError):
    pass
