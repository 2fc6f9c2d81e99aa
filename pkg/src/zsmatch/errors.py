"""Exception types.

Every error carries an optional ``witness`` (the offending tuple, pair or
triple) so callers and the CLI can print exactly what went wrong.
"""


class ZSError(Exception):
    """Base class for all package errors."""

    exit_code = 1

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class ValidationError(ZSError):
    """Input data violates a structural axiom."""


# category
class MissingIdentity(ValidationError):
    pass


class CompositionUndefined(ValidationError):
    pass


class CompositionIllTyped(ValidationError):
    pass


class AssociativityViolation(ValidationError):
    pass


class CyclicGraph(ValidationError):
    pass


class NotAssociative(ValidationError):
    pass


class NoUnit(ValidationError):
    pass


# matched pairs
class ObjectMismatch(ValidationError):
    pass


class ActionIllTyped(ValidationError):
    pass


class MP1Violation(ValidationError):
    pass


class MP2Violation(ValidationError):
    pass


class MP3Violation(ValidationError):
    pass


class NotAnAction(ValidationError):
    pass


class FR1Violation(ValidationError):
    pass


class FR2Violation(ValidationError):
    pass


class FactorisationError(ValidationError):
    """A strict factorisation search failed or was ambiguous."""


class NotComposable(ValidationError):
    pass


class VertexMismatch(ValidationError):
    pass


class CocycleViolation(ValidationError):
    pass


class NotAChainMap(ValidationError):
    pass


# computation
class DegreeTooLarge(ZSError):
    """Enumeration would exceed the configured cap."""

    exit_code = 2


class IndexOutOfRange(ZSError, IndexError):
    pass


class ShapeMismatch(ZSError, ValueError):
    pass


class DegreeNotMaterialised(ZSError):
    pass


class InputError(ZSError):
    """Unreadable or malformed input file."""

    exit_code = 3
