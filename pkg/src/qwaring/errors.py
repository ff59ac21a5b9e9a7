"""Exception types shared across the package."""


class QwaringError(Exception):
    """Base class for all package-specific errors."""


class ZeroDivisor(QwaringError):
    """Extended-Euclid inversion hit a nontrivial gcd with a level minimal
    polynomial, i.e. the minimal polynomial is reducible over the lower level
    and the tower is invalid."""


class DivisionByZero(QwaringError):
    """Inversion of the zero element."""


class BadApproxRoot(QwaringError):
    """The pinned numeric root does not satisfy the minimal polynomial to the
    required accuracy."""


class FieldMismatch(QwaringError):
    """Operands live in incompatible field towers (neither is a prefix of the
    other)."""


class RingMismatch(QwaringError):
    """Polynomial operands disagree in variable count or primal/dual tag."""


class NonHomogeneous(QwaringError):
    """A homogeneous form was required."""


class DimensionMismatch(QwaringError):
    """Vector/point length does not match the ambient variable count."""


class DegreeMismatch(QwaringError):
    """Operands must be forms of equal degree."""


class MissingGenerator(QwaringError):
    """The coefficient tower does not contain a required generator (e.g. the
    imaginary unit)."""


class NotUnitPoint(QwaringError):
    """A point with a.a = 1 was required."""


class UnsupportedExponent(QwaringError):
    """The operation is only implemented for specific exponents s."""


class UnsupportedN(QwaringError):
    """The construction excludes this number of variables."""


class OutOfRange(QwaringError):
    """A family parameter lies outside the stated range."""
