"""Exception hierarchy shared by every bandkit module."""


class BandkitError(Exception):
    """Base class for all bandkit errors."""


class ParseError(BandkitError, ValueError):
    pass


class EmptyWord(BandkitError, ValueError):
    pass


class SameLetter(BandkitError, ValueError):
    pass


class MissingImage(BandkitError, KeyError):
    pass


class BadIndex(BandkitError, ValueError):
    pass


class BadArity(BandkitError, ValueError):
    pass


class AlphabetTooLarge(BandkitError, ValueError):
    pass


class SchemeError(BandkitError):
    """A scheme is malformed or fails a precondition of a scheme operation."""


class NoPermutation(SchemeError):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class ArityTooSmall(SchemeError):
    pass


class BadPivot(SchemeError):
    pass


class NoSolution(SchemeError):
    """Raised by the scheme solver; ``witness`` is a violated identity.

    The witness is a tuple ``(label, lhs, rhs)`` where ``lhs`` and ``rhs`` are
    words and ``label`` says where the identity comes from.
    """

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class BandError(BandkitError, ValueError):
    pass


class NotAssociative(BandError):
    def __init__(self, a, b, c):
        super().__init__(f"not associative: ({a}*{b})*{c} != {a}*({b}*{c})")
        self.triple = (a, b, c)


class NotIdempotent(BandError):
    def __init__(self, a):
        super().__init__(f"not idempotent: {a}*{a} != {a}")
        self.element = a


class MissingAssignment(BandkitError, KeyError):
    pass


class NotInduced(BandkitError):
    pass


class BudgetExceeded(BandkitError):
    pass
