"""Integral forms of the inequalities over finite discrete measures.

A discrete measure with point masses ``mu_i`` turns every integral into the
weighted sum ``sum_i mu_i f_i``, so ``L^2(mu)`` is exactly a
:class:`~gruss.space.WeightedSpace` and the integral inequalities are exact
instances of the vector ones, not approximations. All arithmetic is
delegated to :mod:`gruss.bounds`; this module only wires functions to vectors
and handles the mean-value (``1/mu(Omega)``) normalisations.

Continuous problems on an interval can be fed in pre-sampled, e.g. with
:meth:`MeasureSample.midpoint`; the result is then a statement about the
discrete surrogate measure.
"""

from __future__ import annotations

import dataclasses
import math
from dataclasses import dataclass
from typing import Callable, NamedTuple

import numpy as np

from . import bounds
from .bounds import BoundReport
from .conditions import ADMISSIBLE_TOL, Box, Combination, _slack_re, combine
from .errors import NonUnitError, PreconditionError
from .space import WeightedSpace, norm_sq

H_TOL = 1e-9

__all__ = [
    "H_TOL",
    "MeasureSample",
    "PointwiseResult",
    "RatioReport",
    "check_cor5",
    "check_cor6",
    "check_prop1",
    "check_prop2",
    "integrated_slack",
    "require_h",
    "pointwise_sufficient",
    "ratio_remark5",
    "uniform_h",
]


@dataclass(frozen=True, eq=False)
class MeasureSample:
    """Point masses ``weights`` with the values of ``f``, ``g`` and optionally ``h``."""

    weights: np.ndarray
    f: np.ndarray
    g: np.ndarray
    h: np.ndarray | None = None

    def __post_init__(self):
        space = WeightedSpace(self.weights)
        object.__setattr__(self, "weights", space.weights)
        object.__setattr__(self, "f", space.vector(self.f))
        object.__setattr__(self, "g", space.vector(self.g))
        if self.h is not None:
            object.__setattr__(self, "h", space.vector(self.h))

    @classmethod
    def counting(cls, f, g, h=None) -> "MeasureSample":
        """Unit mass at each of ``len(f)`` points (the discrete-sum setting)."""
        return cls(np.ones(len(f)), f, g, h)

    @classmethod
    def midpoint(
        cls, f: Callable, g: Callable, a: float, b: float, n: int
    ) -> "MeasureSample":
        """Midpoint-rule surrogate of Lebesgue measure on ``[a, b]``."""
        if not b > a or n < 1:
            raise ValueError("need b > a and n >= 1")
        s = a + (np.arange(n) + 0.5) * (b - a) / n
        return cls(np.full(n, (b - a) / n), f(s), g(s))

    @property
    def space(self) -> WeightedSpace:
        return WeightedSpace(self.weights)

    @property
    def total_mass(self) -> float:
        return float(np.cumsum(self.weights)[-1])

    def with_h(self, h) -> "MeasureSample":
        return MeasureSample(self.weights, self.f, self.g, h)

    def scaled(self, c: float) -> "MeasureSample":
        """Masses times ``c`` and ``h`` divided by ``sqrt(c)`` (keeps ``h`` normalised)."""
        h = None if self.h is None else self.h / math.sqrt(c)
        return MeasureSample(self.weights * c, self.f, self.g, h)


def uniform_h(sample: MeasureSample) -> MeasureSample:
    """Attach the constant carrier ``h = 1/sqrt(mu(Omega))``."""
    mass = sample.total_mass
    if not mass > 0:
        raise PreconditionError("total mass must be positive")
    return sample.with_h(np.full(sample.weights.size, 1.0 / math.sqrt(mass)))


def require_h(sample: MeasureSample) -> np.ndarray:
    """Return ``sample.h`` after checking ``sum mu_i |h_i|^2 = 1``."""
    if sample.h is None:
        raise PreconditionError("this check needs a carrier h")
    mass = norm_sq(sample.space, sample.h)
    if abs(mass - 1.0) > H_TOL:
        raise NonUnitError(f"sum mu_i |h_i|^2 = {mass!r}, expected 1")
    return sample.h


def _target(sample: MeasureSample, target: str, lam, sign: int) -> np.ndarray:
    if lam is not None:
        return combine(sample.space, sample.f, sample.g, Combination(lam, sign))
    if target == "f":
        return sample.f
    if target == "g":
        return sample.g
    raise ValueError(f"target must be 'f' or 'g', got {target!r}")


class PointwiseResult(NamedTuple):
    ok: bool
    first_violation: int | None


def pointwise_sufficient(
    sample: MeasureSample,
    box: Box,
    lam: float | None = None,
    target: str = "f",
    sign: int = 1,
    tol: float = ADMISSIBLE_TOL,
) -> PointwiseResult:
    """Check ``|v(s) - (lo + hi)/2 h(s)| <= |hi - lo|/2 |h(s)|`` at every point.

    ``v`` is ``f`` or ``g`` (per ``target``) or, when ``lam`` is given, the
    combination ``lam f + sign (1 - lam) g``. Without a carrier on the sample
    ``h`` is taken to be 1, which is the mean-value setting. Holding everywhere
    implies the integrated condition.
    """
    v = _target(sample, target, lam, sign)
    h = sample.h if sample.h is not None else np.ones(v.size)
    slack = box.width**2 / 4 * np.abs(h) ** 2 - np.abs(v - box.center * h) ** 2
    bad = np.flatnonzero(slack < -tol)
    if bad.size:
        return PointwiseResult(False, int(bad[0]))
    return PointwiseResult(True, None)


def integrated_slack(
    sample: MeasureSample,
    box: Box,
    lam: float | None = None,
    target: str = "f",
    sign: int = 1,
) -> float:
    """``int Re[(hi h - v)(conj(v) - conj(lo h))] dmu`` for the chosen ``v``."""
    h = require_h(sample)
    v = _target(sample, target, lam, sign)
    return _slack_re(sample.space, v, h, box)


def _pointwise_reason(sample, checks) -> str:
    for name, box, lam, target, sign in checks:
        res = pointwise_sufficient(sample, box, lam, target, sign)
        if not res.ok:
            return f"{name} violates the pointwise condition at index {res.first_violation}"
    return ""


def check_prop1(
    sample: MeasureSample, box_f: Box, box_g: Box, tol: float = ADMISSIBLE_TOL
) -> BoundReport:
    """``|int f conj(g) - int f conj(h) int h conj(g)|`` against the M-factor bound."""
    h = require_h(sample)
    return bounds.bound_theorem2(sample.space, sample.f, sample.g, h, box_f, box_g, tol)


def _mean_form(sample: MeasureSample, run) -> BoundReport:
    # with h = 1/sqrt(mu) the vector-layer quantities are mu times the means,
    # and a pointwise box (lo, hi) becomes (lo sqrt(mu), hi sqrt(mu)) relative to h
    mass = sample.total_mass
    report = run(uniform_h(sample), math.sqrt(mass))
    return report.scaled(1.0 / mass)


def check_cor5(
    sample: MeasureSample, box_f: Box, box_g: Box, tol: float = ADMISSIBLE_TOL
) -> BoundReport:
    """Mean-value form: ``|mean(f conj g) - mean(f) mean(conj g)|``.

    Requires the bounds pointwise; the first violating index is named in the
    report's reason.
    """
    sample = MeasureSample(sample.weights, sample.f, sample.g)
    report = _mean_form(
        sample,
        lambda s, k: bounds.bound_theorem2(
            s.space, s.f, s.g, s.h, box_f.scaled(k), box_g.scaled(k), tol
        ),
    )
    reason = _pointwise_reason(
        sample, [("f", box_f, None, "f", 1), ("g", box_g, None, "g", 1)]
    )
    if reason:
        report = dataclasses.replace(report, applicable=False, reason=reason)
    return report


class RatioReport(NamedTuple):
    left: float
    right: float
    applicable: bool
    reason: str = ""

    def verdict(self, tol: float = ADMISSIBLE_TOL) -> str:
        if not self.applicable:
            return bounds.VERDICT_NA
        return bounds.VERDICT_HOLDS if self.left <= self.right + tol else bounds.VERDICT_VIOLATED


def ratio_remark5(
    sample: MeasureSample, box_f: Box, box_g: Box, tol: float = ADMISSIBLE_TOL
) -> RatioReport:
    """``|mu(Omega) int fg / (int f int g) - 1| <= (Z-z)(T-t) / (4 sqrt(zZtT))``.

    For real ``f, g`` with ``0 < z <= f <= Z`` and ``0 < t <= g <= T``.
    """
    for name, box in (("f", box_f), ("g", box_g)):
        if not (box.is_real and 0 < box.lo.real <= box.hi.real):
            raise PreconditionError(f"box for {name} must be real with 0 < lo <= hi")
    if np.any(sample.f.imag != 0) or np.any(sample.g.imag != 0):
        raise PreconditionError("f and g must be real-valued")
    s = uniform_h(MeasureSample(sample.weights, sample.f, sample.g))
    dev = bounds.relative_deviation(s.space, s.f, s.g, s.h)
    if dev is None:
        raise PreconditionError("int f dmu * int g dmu vanishes")
    z, big_z = box_f.lo.real, box_f.hi.real
    t, big_t = box_g.lo.real, box_g.hi.real
    right = (big_z - z) * (big_t - t) / math.sqrt(z * big_z * t * big_t) / 4
    reason = _pointwise_reason(
        sample, [("f", box_f, None, "f", 1), ("g", box_g, None, "g", 1)]
    )
    return RatioReport(abs(dev), right, not reason, reason)


def check_prop2(
    sample: MeasureSample,
    box: Box,
    lam: float,
    two_sided: bool = False,
    tol: float = ADMISSIBLE_TOL,
) -> BoundReport:
    """``I = Re[int f conj g - int f conj h int h conj g]`` against the 1/16 bound.

    With ``two_sided`` the measured quantity is ``|I|`` and both
    ``lam f +- (1 - lam) g`` must be admissible.
    """
    h = require_h(sample)
    fn = bounds.bound_corollary4 if two_sided else bounds.bound_theorem3
    return fn(sample.space, sample.f, sample.g, h, box, lam, tol)


def check_cor6(
    sample: MeasureSample,
    box: Box,
    lam: float,
    two_sided: bool = False,
    tol: float = ADMISSIBLE_TOL,
) -> BoundReport:
    """Mean-value form ``J = mean Re(f conj g) - Re(mean f mean conj g)``.

    Requires the combination bound pointwise (both signs when ``two_sided``).
    """
    sample = MeasureSample(sample.weights, sample.f, sample.g)
    fn = bounds.bound_corollary4 if two_sided else bounds.bound_theorem3
    report = _mean_form(
        sample, lambda s, k: fn(s.space, s.f, s.g, s.h, box.scaled(k), lam, tol)
    )
    checks = [("lam*f + (1-lam)*g", box, lam, "f", 1)]
    if two_sided:
        checks.append(("lam*f - (1-lam)*g", box, lam, "f", -1))
    reason = _pointwise_reason(sample, checks)
    if reason:
        report = dataclasses.replace(report, applicable=False, reason=reason)
    return report
