"""Exception hierarchy shared by every orbitfold module."""


class OrbitfoldError(Exception):
    """Base class for all library errors."""


class ParseError(OrbitfoldError, ValueError):
    pass


class Malformed(ParseError):
    pass


class RepeatedPoint(ParseError):
    pass


class OutOfRange(ParseError):
    pass


class DegreeMismatch(OrbitfoldError, ValueError):
    pass


class DomainMismatch(OrbitfoldError, ValueError):
    pass


class KTooLarge(OrbitfoldError, ValueError):
    pass


class DomainTooLarge(OrbitfoldError):
    pass


class BadDegree(OrbitfoldError, ValueError):
    pass


class NotPrime(OrbitfoldError, ValueError):
    pass


class NotTransitive(OrbitfoldError):
    pass


class SearchBudgetExceeded(OrbitfoldError):
    """Backtrack search visited more nodes than its budget allows."""


class ValidationFailed(OrbitfoldError):
    pass


class MissingData(OrbitfoldError, FileNotFoundError):
    pass


class UnexpectedOrbitShape(OrbitfoldError):
    """A stabilizer had orbits the Steiner-system construction cannot use."""


class OrbitCapExceeded(OrbitfoldError):
    pass


class NotFound(OrbitfoldError, LookupError):
    pass


class UnknownLabel(OrbitfoldError, KeyError):
    pass
