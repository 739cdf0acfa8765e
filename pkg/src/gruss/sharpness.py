"""Extremal constructions and randomized searches for the sharp constants.

Sharpness is reported as an *implied lower bound* on the constant: if an
inequality ``measured <= k * normalizer`` holds on an instance, then
``k >= measured / normalizer``. The extremal families push that ratio up to
the proven constants (1/4 and 1/16) and the analytic prediction is reported
alongside.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from . import bounds
from .bounds import BoundId
from .conditions import Box, Combination, sample_admissible, slack_re
from .space import WeightedSpace, _inner, norm_sq, normalize, residual

__all__ = [
    "Instance",
    "SearchConfig",
    "SearchResult",
    "SweepResult",
    "extremal_corollary3",
    "extremal_instance",
    "extremal_theorem3",
    "random_search",
    "sweep_lambda",
    "sweep_q",
]

_UNIT_BALL = Box(-1, 1)
_E2 = np.array([1.0, 1.0], dtype=complex) / math.sqrt(2.0)


@dataclass(frozen=True, eq=False)
class Instance:
    space: WeightedSpace
    e: np.ndarray
    x: np.ndarray
    y: np.ndarray
    box_x: Box
    box_y: Box
    lam: float | None = None


@dataclass(frozen=True)
class SweepResult:
    parameter: float
    measured: float
    bound_normalizer: float
    implied_constant: float
    analytic_prediction: float
    slack: float

    @property
    def abs_error(self) -> float:
        return abs(self.implied_constant - self.analytic_prediction)


def _distance_sq(space, x, e) -> float:
    # ||x - <x,e>e||^2 avoids cancelling ||x||^2 against |<x,e>|^2
    return norm_sq(space, residual(space, x, e))


def extremal_corollary3(a: float, big_a: float) -> tuple[Instance, SweepResult]:
    """The two-point instance ``x = (a, A)/sqrt(2)`` against ``e = (1, 1)/sqrt(2)``.

    ``x`` sits on the boundary of the admissible ball (slack 0). The implied
    constant is ``aA / (a + A)^2``, which tends to 1/4 as ``a, A -> 1``.
    The reported parameter is ``q = (A - a)/(A + a)``.
    """
    a, big_a = float(a), float(big_a)
    if not 0 < a < big_a:
        raise ValueError(f"need 0 < a < A, got a={a!r}, A={big_a!r}")
    space = WeightedSpace.euclidean(2)
    box = Box(a, big_a)
    x = np.array([a, big_a], dtype=complex) / math.sqrt(2.0)
    measured = _distance_sq(space, x, _E2)
    normalizer = (big_a - a) ** 2 / (a * big_a) * abs(_inner(space, x, _E2)) ** 2
    result = SweepResult(
        parameter=(big_a - a) / (big_a + a),
        measured=measured,
        bound_normalizer=normalizer,
        implied_constant=measured / normalizer,
        analytic_prediction=a * big_a / (a + big_a) ** 2,
        slack=slack_re(space, x, _E2, box),
    )
    return Instance(space, _E2, x, x, box, box), result


def sweep_q(q_values: Sequence[float]) -> list[SweepResult]:
    """Run the ``a = 1 - q, A = 1 + q`` family; prediction ``(1 - q^2)/4``."""
    out = []
    for q in q_values:
        q = float(q)
        if not 0 < q < 1:
            raise ValueError(f"q must lie in (0, 1), got {q!r}")
        _, r = extremal_corollary3(1.0 - q, 1.0 + q)
        out.append(
            SweepResult(q, r.measured, r.bound_normalizer, r.implied_constant, (1 - q * q) / 4, r.slack)
        )
    return out


def extremal_theorem3(gamma: float, big_gamma: float, lam: float) -> tuple[Instance, SweepResult]:
    """``x = y = (gamma, Gamma)/sqrt(2)``; implied constant ``lam (1 - lam) / 4``.

    Peaks at 1/16 for ``lam = 1/2``.
    """
    gamma, big_gamma = float(gamma), float(big_gamma)
    if not big_gamma > gamma:
        raise ValueError(f"need Gamma > gamma, got {gamma!r}, {big_gamma!r}")
    comb = Combination(lam)
    space = WeightedSpace.euclidean(2)
    box = Box(gamma, big_gamma)
    x = np.array([gamma, big_gamma], dtype=complex) / math.sqrt(2.0)
    measured = _distance_sq(space, x, _E2)
    normalizer = (big_gamma - gamma) ** 2 * comb.weight
    result = SweepResult(
        parameter=comb.lam,
        measured=measured,
        bound_normalizer=normalizer,
        implied_constant=measured / normalizer,
        analytic_prediction=comb.lam * (1 - comb.lam) / 4,
        slack=slack_re(space, x, _E2, box),
    )
    return Instance(space, _E2, x, x, box, box, comb.lam), result


def sweep_lambda(lambdas: Sequence[float], gamma: float = 0.0, big_gamma: float = 2.0) -> list[SweepResult]:
    return [extremal_theorem3(gamma, big_gamma, lam)[1] for lam in lambdas]


@dataclass(frozen=True)
class SearchConfig:
    seed: int
    trials: int
    dim: int
    bound: BoundId
    box_x: Box
    box_y: Box | None = None
    complex_mode: bool = False
    lam: float | None = None
    weights: tuple[float, ...] | None = None

    def __post_init__(self):
        object.__setattr__(self, "bound", BoundId(self.bound))
        if self.trials < 1:
            raise ValueError("trials must be >= 1")
        if self.dim < 2:
            raise ValueError("dim must be >= 2; in dim 1 the functional vanishes identically")
        if self.box_y is None:
            object.__setattr__(self, "box_y", self.box_x)
        if self.lam is not None:
            Combination(self.lam)
        if self.weights is not None and len(self.weights) != self.dim:
            raise ValueError("weights must have length dim")
        if self.bound is BoundId.T2:
            bounds.m_factor(self.box_x)
            bounds.m_factor(self.box_y)
        if self.bound is BoundId.C3:
            for b in (self.box_x, self.box_y):
                if not (b.is_real and 0 < b.lo.real <= b.hi.real):
                    raise ValueError("C3 search needs real boxes with 0 < lo <= hi")
        if self.bound is BoundId.SCHWARTZ:
            raise ValueError("SCHWARTZ has no admissibility constraint to search over")

    @property
    def space(self) -> WeightedSpace:
        if self.weights is None:
            return WeightedSpace.euclidean(self.dim)
        return WeightedSpace(np.asarray(self.weights, dtype=float))


@dataclass(frozen=True)
class SearchResult:
    max_ratio: float
    argmax_trial: int
    instance: Instance
    violations: int
    trials: int
    evaluated: int
    ratios: np.ndarray = field(repr=False)


def _orthogonal_unit(space, e) -> np.ndarray:
    # basis vector least aligned with e, with its e-component removed
    k = int(np.argmin(np.abs(e) ** 2 * space.weights))
    b = np.zeros(space.dim, dtype=complex)
    b[k] = 1.0
    return normalize(space, residual(space, b, e))


def extremal_instance(space, e, box_x: Box, box_y: Box, lam: float | None = None) -> Instance:
    """``x = c_x e + r_x u``, ``y = c_y e + r_y u`` with unit ``u`` orthogonal to ``e``.

    Both vectors sit on their ball boundaries and ``G = r_x r_y``, equality in
    the 1/4 bound. With positive real boxes it is the two-point (a, A) family.
    """
    u = _orthogonal_unit(space, e)
    x = box_x.center * e + box_x.radius * u
    y = box_y.center * e + box_y.radius * u
    return Instance(space, e, x, y, box_x, box_y, lam)


def _random_unit(space, rng, complex_mode) -> np.ndarray:
    z = rng.standard_normal(space.dim)
    if complex_mode:
        z = z + 1j * rng.standard_normal(space.dim)
    return normalize(space, z.astype(complex))


def _sample_instance(cfg: SearchConfig, space, rng) -> Instance:
    e = _random_unit(space, rng, cfg.complex_mode)
    cm = cfg.complex_mode
    if cfg.bound in (BoundId.T1, BoundId.T2, BoundId.C3):
        # two points of the unit ball, mapped into each box's ball
        u, v = sample_admissible(space, e, _UNIT_BALL, rng, 2, cm)
        x = cfg.box_x.center * e + cfg.box_x.radius * u
        y = cfg.box_y.center * e + cfg.box_y.radius * v
        return Instance(space, e, x, y, cfg.box_x, cfg.box_y)
    lam = cfg.lam if cfg.lam is not None else float(rng.uniform(0.05, 0.95))
    box = cfg.box_x
    if cfg.bound is BoundId.T3:
        p = sample_admissible(space, e, box, rng, 1, cm)[0]
        x = p + box.radius * sample_admissible(space, e, _UNIT_BALL, rng, 1, cm)[0]
        y = (p - lam * x) / (1 - lam)
    else:
        p, m = sample_admissible(space, e, box, rng, 2, cm)
        x = (p + m) / (2 * lam)
        y = (p - m) / (2 * (1 - lam))
    return Instance(space, e, x, y, box, box, lam)


def _evaluate(cfg: SearchConfig, inst: Instance) -> bounds.BoundReport:
    args = (inst.space, inst.x, inst.y, inst.e)
    if cfg.bound is BoundId.T1:
        return bounds.bound_theorem1(*args, inst.box_x, inst.box_y)
    if cfg.bound is BoundId.T2:
        return bounds.bound_theorem2(*args, inst.box_x, inst.box_y)
    if cfg.bound is BoundId.C3:
        return bounds.bound_corollary3(*args, inst.box_x, inst.box_y)
    if cfg.bound is BoundId.T3:
        return bounds.bound_theorem3(*args, inst.box_x, inst.lam)
    return bounds.bound_corollary4(*args, inst.box_x, inst.lam)


def _seeded_extremal(cfg: SearchConfig, space, rng) -> Instance | None:
    e = _random_unit(space, rng, cfg.complex_mode)
    if cfg.bound in (BoundId.T1, BoundId.T2, BoundId.C3):
        return extremal_instance(space, e, cfg.box_x, cfg.box_y)
    lam = cfg.lam if cfg.lam is not None else 0.5
    inst = extremal_instance(space, e, cfg.box_x, cfg.box_x, lam)
    if cfg.bound is BoundId.C4:
        # x = y = r u; both combinations stay in the ball only for a centred box
        if cfg.box_x.center != 0:
            return None
    return inst


def random_search(cfg: SearchConfig) -> SearchResult:
    """Largest measured/bound ratio over admissible random instances.

    Trial ``t`` draws from ``default_rng([seed, t])``, so trials are
    independent of evaluation order. Trial 0 is the analytic extremal when
    one exists for the bound. Ties go to the lowest trial index. A ratio
    above ``1 + 1e-9`` counts as a violation.
    """
    space = cfg.space
    ratios = np.full(cfg.trials, np.nan)
    best, best_t, best_inst = -math.inf, -1, None
    violations = 0
    for t in range(cfg.trials):
        rng = np.random.default_rng([cfg.seed, t])
        inst = _seeded_extremal(cfg, space, rng) if t == 0 else None
        if inst is None:
            inst = _sample_instance(cfg, space, rng)
        rep = _evaluate(cfg, inst)
        if not rep.applicable or rep.ratio is None:
            continue
        ratios[t] = rep.ratio
        if rep.ratio > 1.0 + 1e-9:
            violations += 1
        if rep.ratio > best:
            best, best_t, best_inst = rep.ratio, t, inst
    evaluated = int(np.count_nonzero(~np.isnan(ratios)))
    return SearchResult(best, best_t, best_inst, violations, cfg.trials, evaluated, ratios)
