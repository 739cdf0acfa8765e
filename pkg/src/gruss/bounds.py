"""The Grüss functional and the inequalities that bound it.

For vectors ``x, y`` and a unit vector ``e`` the functional is::

    G(x, y; e) = <x, y> - <x, e><e, y> = <x - <x,e>e, y - <y,e>e>

Each ``bound_*`` function returns a :class:`BoundReport` carrying the
measured side, the bound, their ratio and the admissibility slacks that
license the bound. Inadmissible inputs are not rejected; the report is
marked ``applicable=False`` with a reason so that batch runs keep going.
Structural problems (non-unit ``e``, dimension mismatch) raise.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .conditions import (
    ADMISSIBLE_TOL,
    Box,
    Combination,
    ConditionReport,
    _check,
    _slack_re,
    combine,
)
from .errors import PreconditionError
from .space import WeightedSpace, _conform, _inner, norm_sq, require_unit, residual

RATIO_FLOOR = 1e-300
# |G| at or below this passes any bound; matches the zero-bound allowance
ZERO_FUNCTIONAL = 1e-12

__all__ = [
    "BoundId",
    "BoundReport",
    "ConvexBound",
    "RefinementBound",
    "SchwartzGap",
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
]


class BoundId(str, enum.Enum):
    T1 = "T1"  # |G| <= 1/4 |hi_x - lo_x| |hi_y - lo_y|
    T2 = "T2"  # |G| <= 1/4 M(box_x) M(box_y) |<x,e><e,y>|
    C3 = "C3"  # real positive boxes, M reduced to (A - a)/sqrt(aA)
    T3 = "T3"  # Re G <= |hi - lo|^2 / (16 lam (1 - lam))
    C4 = "C4"  # |Re G|, same bound, both +/- combinations admissible
    SCHWARTZ = "SCHWARTZ"  # |G|^2 <= gap_x gap_y


VERDICT_HOLDS = "HOLDS"
VERDICT_VIOLATED = "VIOLATED"
VERDICT_NA = "NOT-APPLICABLE"


@dataclass(frozen=True)
class BoundReport:
    bound_id: BoundId
    functional: complex
    measured: float
    bound_value: float | None
    ratio: float | None
    applicable: bool
    reason: str = ""
    conditions: tuple[ConditionReport, ...] = ()

    @property
    def functional_abs(self) -> float:
        return abs(self.functional)

    @property
    def functional_re(self) -> float:
        return self.functional.real

    def verdict(self, tol: float = ADMISSIBLE_TOL) -> str:
        """HOLDS when ``ratio <= 1 + tol`` or ``measured <= bound + 1e-12``.

        The absolute form covers bounds that are themselves at rounding
        level (e.g. ``x`` in ``span(e)``), where the ratio is noise over noise.
        """
        if not self.applicable or self.bound_value is None:
            return VERDICT_NA
        ok = self.measured <= self.bound_value + ZERO_FUNCTIONAL
        if not ok and self.ratio is not None:
            ok = self.ratio <= 1.0 + tol
        return VERDICT_HOLDS if ok else VERDICT_VIOLATED

    def scaled(self, c: float) -> "BoundReport":
        """Report with functional, measured and bound multiplied by ``c > 0``."""
        bound = None if self.bound_value is None else self.bound_value * c
        return BoundReport(
            self.bound_id,
            self.functional * c,
            self.measured * c,
            bound,
            _ratio(self.measured * c, bound),
            self.applicable,
            self.reason,
            self.conditions,
        )


def _ratio(measured: float, bound: float | None) -> float | None:
    if bound is None or bound <= RATIO_FLOOR:
        return None
    return measured / bound


def _report(bound_id, g, measured, bound, conditions=(), reason=""):
    return BoundReport(
        bound_id,
        g,
        measured,
        bound,
        _ratio(measured, bound),
        not reason,
        reason,
        tuple(conditions),
    )


def _admissibility_reason(named: list[tuple[str, ConditionReport]]) -> str:
    failed = [f"{name} inadmissible (slack {c.slack_re:.3e})" for name, c in named if not c.admissible]
    return "; ".join(failed)


def gruss_functional(
    space: WeightedSpace, x: np.ndarray, y: np.ndarray, e: np.ndarray
) -> complex:
    """``<x, y> - <x, e><e, y>`` for unit ``e``."""
    _conform(space, x, y, e)
    require_unit(space, e)
    return _inner(space, x, y) - _inner(space, x, e) * _inner(space, e, y)


class SchwartzGap(NamedTuple):
    gap_x: float
    gap_y: float
    product: float


def schwartz_gap(
    space: WeightedSpace, x: np.ndarray, y: np.ndarray, e: np.ndarray
) -> SchwartzGap:
    """Squared distances of ``x`` and ``y`` from ``span(e)``.

    Equal to ``||x||^2 - |<x,e>|^2``, but evaluated as the squared norm of the
    residual: the difference form cancels badly when ``x`` is close to
    ``span(e)``. ``|G|^2 <= gap_x * gap_y`` by Cauchy-Schwarz on the residuals.
    """
    _conform(space, x, y, e)
    require_unit(space, e)
    gx = norm_sq(space, residual(space, x, e))
    gy = norm_sq(space, residual(space, y, e))
    return SchwartzGap(gx, gy, gx * gy)


def bound_schwartz(space, x, y, e) -> BoundReport:
    g = gruss_functional(space, x, y, e)
    gap = schwartz_gap(space, x, y, e)
    bound = math.sqrt(max(gap.gap_x, 0.0) * max(gap.gap_y, 0.0))
    return _report(BoundId.SCHWARTZ, g, abs(g), bound)


def m_factor(box: Box) -> float:
    """The multiplier ``M(lo, hi)``.

    ``sqrt(((|hi| - |lo|)^2 + 4 (|hi conj(lo)| - Re(hi conj(lo)))) / Re(conj(lo) hi))``;
    for real ``0 < lo <= hi`` this is ``(hi - lo) / sqrt(lo hi)``.
    Requires ``Re(conj(lo) hi) > 0``.
    """
    p = box.hi * box.lo.conjugate()
    denom = p.real
    if not denom > 0:
        raise PreconditionError(f"M-factor needs Re(conj(lo)*hi) > 0, got {denom!r}")
    num = (abs(box.hi) - abs(box.lo)) ** 2 + 4 * (abs(p) - p.real)
    return math.sqrt(max(num, 0.0) / denom)


def bound_theorem1(space, x, y, e, box_x: Box, box_y: Box, tol: float = ADMISSIBLE_TOL) -> BoundReport:
    """``|G| <= 1/4 |hi_x - lo_x| |hi_y - lo_y|``."""
    g = gruss_functional(space, x, y, e)
    cx = _check(space, x, e, box_x, tol)
    cy = _check(space, y, e, box_y, tol)
    bound = box_x.width * box_y.width / 4
    reason = _admissibility_reason([("x", cx), ("y", cy)])
    return _report(BoundId.T1, g, abs(g), bound, (cx, cy), reason)


def bound_theorem2(space, x, y, e, box_x: Box, box_y: Box, tol: float = ADMISSIBLE_TOL) -> BoundReport:
    """``|G| <= 1/4 M(box_x) M(box_y) |<x,e><e,y>|``."""
    g = gruss_functional(space, x, y, e)
    cx = _check(space, x, e, box_x, tol)
    cy = _check(space, y, e, box_y, tol)
    try:
        mx, my = m_factor(box_x), m_factor(box_y)
    except PreconditionError as exc:
        return _report(BoundId.T2, g, abs(g), None, (cx, cy), str(exc))
    scale = abs(_inner(space, x, e) * _inner(space, e, y))
    bound = mx * my * scale / 4
    reason = _admissibility_reason([("x", cx), ("y", cy)])
    return _report(BoundId.T2, g, abs(g), bound, (cx, cy), reason)


def bound_corollary3(space, x, y, e, box_x: Box, box_y: Box, tol: float = ADMISSIBLE_TOL) -> BoundReport:
    """The M-factor bound specialised to real boxes ``0 < a < A``, ``0 < b < B``."""
    g = gruss_functional(space, x, y, e)
    cx = _check(space, x, e, box_x, tol)
    cy = _check(space, y, e, box_y, tol)
    for name, box in (("box_x", box_x), ("box_y", box_y)):
        if not (box.is_real and 0 < box.lo.real <= box.hi.real):
            reason = f"{name} must be real with 0 < lo <= hi, got ({box.lo}, {box.hi})"
            return _report(BoundId.C3, g, abs(g), None, (cx, cy), reason)
    a, big_a = box_x.lo.real, box_x.hi.real
    b, big_b = box_y.lo.real, box_y.hi.real
    scale = abs(_inner(space, x, e) * _inner(space, e, y))
    bound = (big_a - a) * (big_b - b) / math.sqrt(a * b * big_a * big_b) * scale / 4
    reason = _admissibility_reason([("x", cx), ("y", cy)])
    return _report(BoundId.C3, g, abs(g), bound, (cx, cy), reason)


def relative_deviation(space, x, y, e) -> complex | None:
    """``<x,y> / (<x,e><e,y>) - 1``, or ``None`` when the denominator vanishes.

    The denominator counts as vanishing below ``1e-12 ||x|| ||y||``.
    """
    _conform(space, x, y, e)
    require_unit(space, e)
    den = _inner(space, x, e) * _inner(space, e, y)
    scale = math.sqrt(norm_sq(space, x) * norm_sq(space, y))
    if abs(den) <= 1e-12 * scale or den == 0:
        return None
    return _inner(space, x, y) / den - 1


def _as_combination(lam, sign=1) -> Combination:
    if isinstance(lam, Combination):
        return Combination(lam.lam, sign)
    return Combination(lam, sign)


def bound_theorem3(space, x, y, e, box: Box, lam, tol: float = ADMISSIBLE_TOL) -> BoundReport:
    """``Re G <= |hi - lo|^2 / (16 lam (1 - lam))``.

    Licensed by admissibility of ``lam x + (1 - lam) y``. ``lam`` is a float or
    a :class:`Combination` (its sign is ignored; the ``+`` form is used).
    """
    comb = _as_combination(lam)
    g = gruss_functional(space, x, y, e)
    c = _check(space, combine(space, x, y, comb), e, box, tol)
    bound = box.width**2 * comb.weight / 16
    reason = _admissibility_reason([("lam*x + (1-lam)*y", c)])
    return _report(BoundId.T3, g, g.real, bound, (c,), reason)


def bound_corollary4(space, x, y, e, box: Box, lam, tol: float = ADMISSIBLE_TOL) -> BoundReport:
    """``|Re G| <= |hi - lo|^2 / (16 lam (1 - lam))``, two-sided.

    Licensed by admissibility of both ``lam x + (1 - lam) y`` and
    ``lam x - (1 - lam) y``.
    """
    plus = _as_combination(lam, 1)
    minus = _as_combination(lam, -1)
    g = gruss_functional(space, x, y, e)
    cp = _check(space, combine(space, x, y, plus), e, box, tol)
    cm = _check(space, combine(space, x, y, minus), e, box, tol)
    bound = box.width**2 * plus.weight / 16
    reason = _admissibility_reason([("lam*x + (1-lam)*y", cp), ("lam*x - (1-lam)*y", cm)])
    return _report(BoundId.C4, g, abs(g.real), bound, (cp, cm), reason)


class RefinementBound(NamedTuple):
    gap: float
    bound: float
    ratio: float | None


def lemma_schwartz_refinement(
    space, u: np.ndarray, v: np.ndarray, box: Box, tol: float = ADMISSIBLE_TOL
) -> RefinementBound:
    """Reverse Cauchy-Schwarz: ``||u||^2 ||v||^2 - |<u,v>|^2 <= 1/4 M^2 |<u,v>|^2``.

    Requires ``Re <hi v - u, u - lo v> >= 0``; ``v`` need not be a unit vector.
    """
    _conform(space, u, v)
    m = m_factor(box)
    s = _slack_re(space, u, v, box)
    if s < -tol:
        raise PreconditionError(f"Re<hi v - u, u - lo v> = {s!r} < 0")
    uv = abs(_inner(space, u, v)) ** 2
    gap = norm_sq(space, u) * norm_sq(space, v) - uv
    bound = m * m * uv / 4
    return RefinementBound(gap, bound, _ratio(gap, bound))


class ConvexBound(NamedTuple):
    left: float
    right: float


def lemma_convex_bound(space, p: np.ndarray, q: np.ndarray, lam: float) -> ConvexBound:
    """``Re <p, q> <= ||lam p + (1 - lam) q||^2 / (4 lam (1 - lam))``."""
    comb = Combination(lam)
    _conform(space, p, q)
    left = _inner(space, p, q).real
    right = norm_sq(space, combine(space, p, q, comb)) * comb.weight / 4
    return ConvexBound(left, right)
