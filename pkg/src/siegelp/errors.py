"""Exception hierarchy shared by all siegelp modules."""


class SiegelpError(Exception):
    """Base class for all library errors."""


class ContextError(SiegelpError):
    """Mixed scalars from incompatible quadratic extensions."""


class DivisionByZero(SiegelpError, ZeroDivisionError):
    """Exact division by a zero scalar or rational function."""


class NotInField(SiegelpError):
    """A requested half-power combination does not lie in the working field.

    Raised instead of silently embedding into a larger extension; in the
    series engine this almost always signals a parity bug upstream.
    """


class NegativeExponent(SiegelpError):
    """Taylor expansion requested for a genuinely Laurent function."""


class PoleAtSample(SiegelpError):
    """A lemma-sum denominator vanishes at the sampled point."""


class SingularMatrix(SiegelpError):
    """det N = 0 where a non-degenerate matrix is required."""


class UnsupportedPrime(SiegelpError):
    """p = 2 (or a non-prime) passed to odd-p local machinery."""


class PreconditionError(SiegelpError, ValueError):
    """An argument is outside the documented domain (e.g. nu out of range)."""


class BudgetExceeded(SiegelpError):
    """Oracle enumeration size exceeds the configured budget."""


class ReductionFailure(SiegelpError):
    """No p-unit pivot reachable during symmetric reduction (impossible for odd p)."""
