"""Domain errors shared by all modules."""


class PadicqError(Exception):
    """Base class for every error raised by this package."""


class NotPIntegral(PadicqError, ArithmeticError):
    """A rational value has p in its denominator and cannot be reduced."""


class NotUnit(PadicqError, ArithmeticError):
    """A scalar required to be a p-adic unit is divisible by p."""


class NotRootOfUnity(PadicqError, ArithmeticError):
    """A cyclotomic element expected to satisfy x**(p**m) == 1 does not."""


class PrecisionExhausted(PadicqError, ArithmeticError):
    """A computation cannot certify even one p-adic digit of its result."""


class BaseMismatch(PadicqError, ValueError):
    """Torsion points from incompatible Kummer bases were combined."""


class IncompatibleRoots(PadicqError, ValueError):
    """A root system fails the compatibility relation r[i+1]**p == r[i]."""


class UnsupportedShape(PadicqError, TypeError):
    """A function cannot be re-expressed in the supported function classes."""


class EulerFactorNotInvertible(PadicqError, ArithmeticError):
    """The Euler-type factor of a two-variable L-value is not a unit."""


class ConfigError(PadicqError, ValueError):
    """Invalid run configuration."""
