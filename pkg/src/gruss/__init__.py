"""Grüss-type inequalities on weighted inner-product spaces.

Submodules:

- :mod:`gruss.space` -- weighted inner products, norms, projections
- :mod:`gruss.conditions` -- admissibility slacks and samplers
- :mod:`gruss.bounds` -- the functional and its bounds
- :mod:`gruss.measures` -- integral forms over discrete measures
- :mod:`gruss.sharpness` -- extremal families and randomized search
- :mod:`gruss.cli` -- the ``gruss`` command
"""

from .bounds import (
    BoundId,
    BoundReport,
    bound_corollary3,
    bound_corollary4,
    bound_schwartz,
    bound_theorem1,
    bound_theorem2,
    bound_theorem3,
    gruss_functional,
    lemma_convex_bound,
    lemma_schwartz_refinement,
    m_factor,
    relative_deviation,
    schwartz_gap,
)
from .conditions import (
    Box,
    Combination,
    ConditionReport,
    check,
    combine,
    sample_admissible,
    slack_ball,
    slack_re,
)
from .errors import (
    DimensionError,
    GrussError,
    NonFiniteError,
    NonUnitError,
    PreconditionError,
)
from .measures import MeasureSample, uniform_h
from .space import WeightedSpace, inner, norm, normalize, residual

__version__ = "0.1.0"

__all__ = [
    "BoundId",
    "BoundReport",
    "bound_corollary3",
    "bound_corollary4",
    "bound_schwartz",
    "bound_theorem1",
    "bound_theorem2",
    "bound_theorem3",
    "gruss_functional",
    "lemma_convex_bound",
    "lemma_schwartz_refinement",
    "m_factor",
    "relative_deviation",
    "schwartz_gap",
    "Box",
    "Combination",
    "ConditionReport",
    "check",
    "combine",
    "sample_admissible",
    "slack_ball",
    "slack_re",
    "DimensionError",
    "GrussError",
    "NonFiniteError",
    "NonUnitError",
    "PreconditionError",
    "MeasureSample",
    "uniform_h",
    "WeightedSpace",
    "inner",
    "norm",
    "normalize",
    "residual",
]
