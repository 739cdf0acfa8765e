"""Exception hierarchy. Everything derives from ``ValueError``."""


class GrussError(ValueError):
    pass


class DimensionError(GrussError):
    """A vector does not match the dimension of its space."""


class NonFiniteError(GrussError):
    """NaN or infinity reached a constructor."""


class NonUnitError(GrussError):
    """A vector required to have unit norm does not."""


class PreconditionError(GrussError):
    """A hypothesis of an inequality (e.g. ``Re(conj(a) A) > 0``) fails."""
