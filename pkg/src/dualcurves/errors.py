"""Exception hierarchy.

``ValidationError`` subclasses signal bad input (CLI exit code 1);
``NumericalDegeneracy`` subclasses signal a well-formed input whose geometry
degenerates at some parameter (CLI exit code 2).
"""


class DualGeometryError(Exception):
    pass


class ValidationError(DualGeometryError, ValueError):
    pass


class NumericalDegeneracy(DualGeometryError, ArithmeticError):
    pass


class DivisionByPureDual(NumericalDegeneracy, ZeroDivisionError):
    """Divisor has zero real part; the quotient does not exist in D."""


class DomainError(NumericalDegeneracy, ValueError):
    """Real part outside the domain of a lifted function."""


class LightlikeNorm(NumericalDegeneracy):
    pass


class PlaneCharacterUndetermined(NumericalDegeneracy):
    pass


class LightlikeVelocity(NumericalDegeneracy):
    pass


class DegenerateJet(NumericalDegeneracy):
    pass


class CausalMismatch(NumericalDegeneracy):
    pass


class NotUnitSpeed(NumericalDegeneracy):
    pass


class DegenerateCondition(NumericalDegeneracy):
    pass


class AtanhDomain(DomainError):
    pass


class OrientationFlip(NumericalDegeneracy):
    """B and V2 change relative orientation inside the grid."""


class LambdaZero(ValidationError):
    """Offset distance has zero real part."""


class GridTooSmall(ValidationError):
    pass


class ConfigError(ValidationError):
    pass


class ExpressionError(ValidationError):
    """Curve expression text outside the supported grammar."""
