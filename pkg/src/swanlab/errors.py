"""Exception hierarchy shared by every swanlab module."""


class SwanlabError(Exception):
    """Base class for all library errors."""


class ConfigError(SwanlabError, ValueError):
    """Invalid field configuration or out-of-cap Witt parameters."""


class NotAPthPower(SwanlabError, ArithmeticError):
    pass


class IntegralityFailure(SwanlabError, ArithmeticError):
    """A ghost-recursion division by a power of p was inexact."""


class NotInFiltration(SwanlabError, ValueError):
    pass


class NotInBGr(SwanlabError, ValueError):
    """The graded form is not in the image of the refined-conductor map."""


class UnsupportedRange(SwanlabError):
    """Requested refined modified conductor outside its defining range."""


class OutOfTheoremRange(SwanlabError):
    """Theorem hypotheses on the conductor are not met."""


class ReductionBudgetExceeded(SwanlabError):
    """Bounded representative search failed to certify the conductor.

    ``best`` is the best representative found; ``sw_upper_bound`` its
    naive filtration level, which bounds the true conductor from above.
    """

    def __init__(self, message, best=None, sw_upper_bound=None):
        super().__init__(message)
        self.best = best
        self.sw_upper_bound = sw_upper_bound


class ParseError(SwanlabError, ValueError):
    def __init__(self, message, position=0, expected=()):
        self.position = position
        self.expected = tuple(expected)
        detail = message
        if self.expected:
            detail += " (expected one of: %s)" % ", ".join(self.expected)
        super().__init__("at position %d: %s" % (position, detail))


class DivisionByZero(SwanlabError, ZeroDivisionError):
    pass
