"""Exception types raised by coxlattice."""


class CoxlatticeError(Exception):
    """Base class for all library errors."""


class FieldMismatchError(CoxlatticeError, ValueError):
    """Arithmetic between elements of two different number fields."""


class TypeParseError(CoxlatticeError, ValueError):
    """A Coxeter type symbol could not be parsed or is out of range."""


class NotInIntervalError(CoxlatticeError, ValueError):
    """A group element was required to lie below the Coxeter element."""


class VerificationError(CoxlatticeError, RuntimeError):
    """An internal consistency check failed.

    These signal implementation bugs: every check guarded this way is a
    theorem for finite reflection groups.
    """
