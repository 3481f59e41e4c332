"""Exception hierarchy.

Two families matter to callers: `InputError` (the request itself is bad -- exit
code 2 in the CLI) and `InvariantError` (the inputs were fine but an internal
consistency check failed, which means a bug or insufficient precision -- exit
code 3 in the CLI).
"""


class ZetaError(Exception):
    """Base class for everything raised deliberately by this package."""


class InputError(ZetaError):
    """The caller's input was rejected during validation."""


class InvariantError(ZetaError):
    """An internal invariant failed; indicates a bug or precision shortfall."""


# -- input validation ---------------------------------------------------------

class NotPrime(InputError):
    pass


class EvenCharacteristic(InputError):
    pass


class ReducibleModulus(InputError):
    pass


class MissingModulus(InputError):
    pass


class DegreeTooSmall(InputError):
    pass


class NotSeparable(InputError):
    pass


class TooLarge(InputError):
    pass


# -- usage errors (not reachable from the CLI) --------------------------------

class FieldMismatch(ZetaError):
    """Mixed elements of two different fields in one operation."""


class BothZero(ZetaError):
    """gcd(0, 0) requested."""


class DivisionByZero(ZetaError, ZeroDivisionError):
    pass


class OddDegree(ZetaError):
    """Operation only defined for even-degree models."""


# -- internal invariants ------------------------------------------------------

class PrecisionExhausted(InvariantError):
    pass


class NonBasisResidual(InvariantError):
    """Reduction left a term outside the span of the chosen basis."""


class NewtonDivisionFailure(InvariantError):
    """Power-sum / coefficient round trip failed at working precision."""


class WeilBoundViolation(InvariantError):
    """A lifted coefficient violates its archimedean bound."""


class NonIntegralCoefficient(InvariantError):
    """Exact rational arithmetic produced a non-integer where an integer is forced."""
