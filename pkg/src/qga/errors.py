"""Exception hierarchy shared by all qga modules."""


class QgaError(Exception):
    """Base class for all domain errors raised by this package."""


class MetricMismatch(QgaError):
    """Operands live in algebras with different metrics."""


class NotScalar(QgaError):
    """v v* has a nonzero non-scalar part, so the input was not a versor."""


class NullElement(QgaError):
    """Inverse requested for an element with vanishing norm."""


class NotGradeOne(QgaError):
    """Operation requires a grade-1 element."""


class NotAPoint(QgaError):
    """Vector is not a (possibly scaled) embedded point."""


class ZeroMatrix(QgaError):
    """Quadric coefficient matrix is identically zero."""


class ZeroVector(QgaError):
    """Vector is identically zero."""


class GradeOutOfRange(QgaError):
    """Blade grade outside the range supported by the duality blades."""


class DegeneratePoints(QgaError):
    """Input points are affinely dependent; the wedge vanishes."""


class NullVersor(QgaError):
    """Sandwich requested with a non-invertible (null) versor."""


class NotAQuadric(QgaError):
    """Inversion element is not a grade-1 non-null quadric vector."""


class NotInSubalgebra(QgaError):
    """Element has components outside the planar-displacement span."""


class DimensionMismatch(QgaError):
    """Polynomial systems have different variable counts."""


class HasLinearTerms(QgaError):
    """Closed-form inversion reference requires a centered quadric."""
