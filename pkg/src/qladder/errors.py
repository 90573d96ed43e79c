"""Exception hierarchy for qladder.

Every domain error derives from :class:`QLadderError` and from the builtin
exception a caller would naturally expect, so ``except ValueError`` keeps
working for parameter problems.
"""


class QLadderError(Exception):
    """Base class for all qladder errors"""


class DomainError(QLadderError, ValueError):
    """Argument outside the domain of a weight or series"""


class ZeroArgument(DomainError):
    """q-difference quotient requested at x = 0"""


class DivergentInput(DomainError):
    """Infinite product or sum does not converge for the given input"""


class PoleInLowerParameter(DomainError):
    """Terminating series hits a zero of its lower Pochhammer factor"""


class UnsupportedFamily(QLadderError, ValueError):
    """Operation not defined for the requested weight family"""


class Unavailable(QLadderError, LookupError):
    """No closed form is known for the requested quantity"""


class InvalidP(QLadderError, ValueError):
    """Parameter p rejected by the q-P_V recursion (p = 0 belongs to q-P_III)"""


class NoConvergence(QLadderError, ArithmeticError):
    """Tolerance not reached within the evaluation cap"""


class PrecisionExhausted(QLadderError, ArithmeticError):
    """Working precision too low to certify a result"""


class SingularStep(QLadderError, ArithmeticError):
    """Painleve step would divide by zero"""


class NegativeSquare(QLadderError, ArithmeticError):
    """A quantity that must be a square came out negative"""


class ZeroDenominator(QLadderError, ZeroDivisionError):
    """Rational ladder function evaluated at a pole"""
