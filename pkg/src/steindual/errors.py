"""Exception types.

Every failure that is caused by the input data (as opposed to a programming
error) carries the name of the violated law and a witness tuple of element or
arrow indices, so callers can re-evaluate the violation themselves.
"""


class SteindualError(Exception):
    """Base class for all package errors."""


class LawViolation(SteindualError):
    """A named law fails on a concrete witness."""

    law = "law"

    def __init__(self, witness=(), detail="", law=None):
        if law is not None:
            self.law = law
        self.witness = tuple(witness)
        self.detail = detail
        message = f"{self.law} fails at {self.witness}"
        if detail:
            message += f": {detail}"
        super().__init__(message)


class NonAssociative(LawViolation):
    law = "associativity"


class BadZero(LawViolation):
    law = "zero"


class NotAbelianGroup(LawViolation):
    law = "abelian group"


class NotDistributive(LawViolation):
    law = "distributivity"


class NotCategory(LawViolation):
    law = "category"


class NotGroupoid(LawViolation):
    law = "groupoid"


class NotFunctor(LawViolation):
    law = "functor"


class NotIsofibration(LawViolation):
    law = "isofibration"


class ZeroLawFails(LawViolation):
    law = "zero section"


class CoreNotSurjective(LawViolation):
    law = "core surjectivity"


class NotSection(LawViolation):
    law = "section"


class NotStructured(LawViolation):
    law = "structured data"


class NoZero(SteindualError):
    """The structure has no absorbing element."""


class NotOrthogonal(LawViolation):
    law = "orthogonality"


class NotInZ(LawViolation):
    law = "membership in Z"


class NotRestriction(LawViolation):
    law = "restriction"


class ProfileMismatch(SteindualError):
    """The input belongs to the wrong family for the requested profile."""


class ProfileFailure(SteindualError):
    """A required axiom profile does not hold; carries the report."""

    def __init__(self, report):
        self.report = report
        failed = ", ".join(c.law for c in report.failures())
        super().__init__(f"profile {report.profile} fails: {failed}")


class NotClosed(LawViolation):
    law = "ultrafilter product closure"


class RepresentativeNotFound(LawViolation):
    law = "dominated representative"


class NeitherSliceSupported(LawViolation):
    law = "slice support"


class IllDefined(LawViolation):
    law = "well-definedness on classes"


class NotUltrafilter(LawViolation):
    law = "ultrafilter"


class NotInjective(LawViolation):
    law = "injectivity"


class NotSurjective(LawViolation):
    law = "surjectivity"


class NotMorphism(LawViolation):
    law = "morphism"


class DomainMismatch(SteindualError):
    """Composed morphisms do not share the middle object."""


class NaturalitySquareFails(LawViolation):
    law = "naturality"


class TooLarge(SteindualError):
    """A size guard was exceeded."""


class NotLocallyUnital(LawViolation):
    law = "local units"


class NoUnits(SteindualError):
    """A ring has no invertible element."""


class ParseError(SteindualError):
    """A structure file could not be parsed."""

    def __init__(self, message, key=None, line=None):
        self.key = key
        self.line = line
        where = []
        if key is not None:
            where.append(f"key {key!r}")
        if line is not None:
            where.append(f"line {line}")
        prefix = f"{', '.join(where)}: " if where else ""
        super().__init__(prefix + message)
