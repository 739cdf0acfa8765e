"""Admissibility of a vector relative to a unit vector ``e`` and a box ``(lo, hi)``.

The condition comes in two algebraically identical forms::

    Re <hi e - x, x - lo e>  >= 0                       (product form)
    ||x - (lo + hi)/2 e||    <= |hi - lo| / 2           (ball form)

Both are evaluated here as slacks, i.e. the amount by which the inequality
holds. For unit ``e`` the two slacks are equal as real numbers; in floating
point they agree to rounding.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import NonFiniteError
from .space import WeightedSpace, _conform, _inner, as_scalar, require_unit

ADMISSIBLE_TOL = 1e-9
LAMBDA_EPS = 1e-12

__all__ = [
    "ADMISSIBLE_TOL",
    "LAMBDA_EPS",
    "Box",
    "Combination",
    "ConditionReport",
    "check",
    "combine",
    "sample_admissible",
    "slack_ball",
    "slack_re",
]


@dataclass(frozen=True)
class Box:
    """Ordered pair of constants ``(lo, hi)``, e.g. ``(a, A)`` or ``(gamma, Gamma)``."""

    lo: complex
    hi: complex

    def __post_init__(self):
        object.__setattr__(self, "lo", as_scalar(self.lo))
        object.__setattr__(self, "hi", as_scalar(self.hi))

    @property
    def center(self) -> complex:
        return (self.lo + self.hi) / 2

    @property
    def width(self) -> float:
        return abs(self.hi - self.lo)

    @property
    def radius(self) -> float:
        return self.width / 2

    @property
    def is_real(self) -> bool:
        return self.lo.imag == 0.0 and self.hi.imag == 0.0

    def scaled(self, c: float) -> "Box":
        return Box(self.lo * c, self.hi * c)


@dataclass(frozen=True)
class ConditionReport:
    slack_re: float
    slack_ball: float
    admissible: bool
    tolerance_used: float


@dataclass(frozen=True)
class Combination:
    """``lam * x + sign * (1 - lam) * y`` with ``lam`` in the open unit interval."""

    lam: float
    sign: int = 1

    def __post_init__(self):
        lam = float(self.lam)
        if not np.isfinite(lam):
            raise NonFiniteError(f"lambda must be finite, got {self.lam!r}")
        if lam <= LAMBDA_EPS or lam >= 1.0 - LAMBDA_EPS:
            raise ValueError(f"lambda must lie in (0, 1), got {lam!r}")
        if self.sign not in (1, -1):
            raise ValueError(f"sign must be +1 or -1, got {self.sign!r}")
        object.__setattr__(self, "lam", lam)

    @property
    def weight(self) -> float:
        """``1 / (lam (1 - lam))``, the factor multiplying the 1/16 bound."""
        return 1.0 / (self.lam * (1.0 - self.lam))


def _slack_re(space, x, v, box: Box) -> float:
    # v need not be a unit vector here
    return _inner(space, box.hi * v - x, x - box.lo * v).real


def slack_re(space: WeightedSpace, x: np.ndarray, e: np.ndarray, box: Box) -> float:
    """``Re <hi e - x, x - lo e>``, straight from the definition."""
    _conform(space, x, e)
    require_unit(space, e)
    return _slack_re(space, x, e, box)


def slack_ball(space: WeightedSpace, x: np.ndarray, e: np.ndarray, box: Box) -> float:
    """``|hi - lo|^2 / 4 - ||x - center e||^2``."""
    _conform(space, x, e)
    require_unit(space, e)
    d = x - box.center * e
    return box.width**2 / 4 - _inner(space, d, d).real


def check(
    space: WeightedSpace,
    x: np.ndarray,
    e: np.ndarray,
    box: Box,
    tol: float = ADMISSIBLE_TOL,
) -> ConditionReport:
    """Evaluate both slacks; the boundary (slack 0) counts as admissible."""
    if tol < 0:
        raise ValueError("tolerance must be nonnegative")
    _conform(space, x, e)
    require_unit(space, e)
    return _check(space, x, e, box, tol)


def _check(space, x, e, box: Box, tol: float) -> ConditionReport:
    # caller has validated shapes and the unit vector
    s_re = _slack_re(space, x, e, box)
    d = x - box.center * e
    s_ball = box.width**2 / 4 - _inner(space, d, d).real
    return ConditionReport(s_re, s_ball, s_re >= -tol, tol)


def combine(
    space: WeightedSpace, x: np.ndarray, y: np.ndarray, comb: Combination
) -> np.ndarray:
    _conform(space, x, y)
    return comb.lam * x + comb.sign * (1.0 - comb.lam) * y


def sample_admissible(
    space: WeightedSpace,
    e: np.ndarray,
    box: Box,
    seed,
    count: int,
    complex_mode: bool | None = None,
) -> np.ndarray:
    """Draw ``count`` vectors uniformly from the admissible ball.

    Returns an array of shape ``(count, dim)``; each row is
    ``center e + radius * u`` with ``||u|| <= 1``. Directions are Gaussian in
    the weighted coordinates and radii follow ``U**(1/d)`` where ``d`` is the
    real dimension (``dim`` or ``2 dim``), so the sample is uniform in volume.
    ``seed`` is anything :func:`numpy.random.default_rng` accepts.

    ``complex_mode`` defaults to complex whenever ``e`` or the box has a
    nonzero imaginary part.
    """
    if count < 1:
        raise ValueError("count must be >= 1")
    _conform(space, e)
    require_unit(space, e)
    if complex_mode is None:
        complex_mode = bool(np.any(np.imag(e) != 0)) or not box.is_real
    rng = np.random.default_rng(seed)
    n = space.dim
    z = rng.standard_normal((count, n))
    if complex_mode:
        z = z + 1j * rng.standard_normal((count, n))
    real_dim = 2 * n if complex_mode else n
    lengths = np.linalg.norm(z, axis=1)
    lengths[lengths == 0.0] = 1.0
    scale = rng.random(count) ** (1.0 / real_dim) / lengths
    u = z * scale[:, None] / np.sqrt(space.weights)
    return box.center * e + box.radius * u
