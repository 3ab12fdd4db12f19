"""Exception hierarchy.

Every error carries a stable machine-readable ``code`` (the class name) so the
CLI can report it without string matching.
"""


class TropigusaError(Exception):
    exit_status = 1

    @property
    def code(self) -> str:
        return type(self).__name__

    def to_dict(self) -> dict:
        return {"code": self.code, "message": str(self)}


class InputError(TropigusaError):
    """Malformed user input (bad literal, schema violation, missing file)."""

    exit_status = 2


class ParseError(InputError):
    pass


class SchemaError(InputError):
    pass


class DomainError(TropigusaError):
    """A well-formed request that has no mathematical answer."""


class InvalidField(DomainError):
    pass


class ZeroLeadingCoefficient(DomainError):
    pass


class DegenerateCurve(DomainError):
    pass


class NotARoot(DomainError):
    pass


class RootNotSimple(DomainError):
    pass


class NoCaseMatches(DomainError):
    pass


class AmbiguousVerdict(DomainError):
    pass


class NonPositiveThickness(DomainError):
    pass


class NonCommensurableLengths(DomainError):
    pass


class DisconnectedGraph(DomainError):
    pass


class UnknownVertex(DomainError):
    pass


class NonZeroDegree(DomainError):
    pass


class NotPrincipal(DomainError):
    pass


class InvalidConfig(DomainError):
    pass
