"""Finite-dimensional weighted inner-product spaces over R or C.

A :class:`WeightedSpace` with weights ``w`` carries the inner product

    <x, y> = sum_i w_i x_i conj(y_i)

which is linear in the first argument and conjugate-linear in the second.
Vectors are plain ``numpy`` arrays of dtype ``complex128``; real vectors are
the zero-imaginary-part subset. Sums are taken in ascending index order so
results are bit-reproducible.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .errors import DimensionError, NonFiniteError, NonUnitError

UNIT_TOL = 1e-9

__all__ = [
    "UNIT_TOL",
    "WeightedSpace",
    "as_scalar",
    "inner",
    "norm",
    "norm_sq",
    "normalize",
    "residual",
    "require_unit",
]


def as_scalar(value) -> complex:
    """Coerce ``value`` to a finite Python complex.

    Accepts numbers and ``[re, im]`` pairs.
    """
    if isinstance(value, (list, tuple)):
        if len(value) != 2:
            raise ValueError(f"complex pair must have two entries, got {value!r}")
        z = complex(float(value[0]), float(value[1]))
    else:
        z = complex(value)
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise NonFiniteError(f"non-finite scalar {value!r}")
    return z


@dataclass(frozen=True, eq=False)
class WeightedSpace:
    """C^n (or R^n) with strictly positive weights."""

    weights: np.ndarray

    def __post_init__(self):
        w = np.array(self.weights, dtype=float).reshape(-1)
        if w.size < 1:
            raise DimensionError("a weighted space needs dim >= 1")
        if not np.all(np.isfinite(w)):
            raise NonFiniteError("weights must be finite")
        if not np.all(w > 0):
            raise ValueError("weights must be strictly positive")
        w.setflags(write=False)
        object.__setattr__(self, "weights", w)

    @classmethod
    def euclidean(cls, dim: int) -> "WeightedSpace":
        return cls(np.ones(dim))

    @classmethod
    def mean(cls, dim: int) -> "WeightedSpace":
        """Uniform probability weights 1/dim; the all-ones vector is a unit."""
        return cls(np.full(dim, 1.0 / dim))

    @property
    def dim(self) -> int:
        return self.weights.size

    def vector(self, values: Iterable) -> np.ndarray:
        """Validate ``values`` against this space and return a complex array.

        Entries may be numbers or ``[re, im]`` pairs.
        """
        if isinstance(values, np.ndarray):
            v = values.astype(complex, copy=True).reshape(-1)
        else:
            v = np.array([as_scalar(t) for t in values], dtype=complex)
        if v.size != self.dim:
            raise DimensionError(f"vector has length {v.size}, space has dim {self.dim}")
        if not np.all(np.isfinite(v)):
            raise NonFiniteError("vector has non-finite entries")
        v.setflags(write=False)
        return v

    def __eq__(self, other):
        if not isinstance(other, WeightedSpace):
            return NotImplemented
        return np.array_equal(self.weights, other.weights)

    def __hash__(self):
        return hash(self.weights.tobytes())

    def __repr__(self):
        return f"WeightedSpace(weights={self.weights.tolist()!r})"


def _conform(space: WeightedSpace, *vectors: np.ndarray) -> None:
    shape = (space.dim,)
    for v in vectors:
        if getattr(v, "shape", None) != shape:
            raise DimensionError(
                f"vector of shape {np.shape(v)} does not conform to dim {space.dim}"
            )


def _inner(space: WeightedSpace, x: np.ndarray, y: np.ndarray) -> complex:
    # Real arithmetic spelled out: numpy's complex multiply may fuse operations
    # asymmetrically, which breaks <x,y> == conj(<y,x>) in the last bit.
    # A plain loop is also a strict left-to-right sum (no pairwise blocks as in
    # np.sum, no compensation as in sum() on 3.12+) and is fast at small dim.
    sr = si = 0.0
    for a, b, c, d, w in zip(
        x.real.tolist(), x.imag.tolist(), y.real.tolist(), y.imag.tolist(), space.weights.tolist()
    ):
        sr += (a * c + b * d) * w
        si += (b * c - a * d) * w
    return complex(sr, si)


def inner(space: WeightedSpace, x: np.ndarray, y: np.ndarray) -> complex:
    """Weighted inner product ``sum w_i x_i conj(y_i)``."""
    _conform(space, x, y)
    return _inner(space, x, y)


def norm_sq(space: WeightedSpace, x: np.ndarray) -> float:
    _conform(space, x)
    return _inner(space, x, x).real


def norm(space: WeightedSpace, x: np.ndarray) -> float:
    return math.sqrt(max(norm_sq(space, x), 0.0))


def normalize(space: WeightedSpace, x: np.ndarray) -> np.ndarray:
    """Return ``x / ||x||``; raises for the zero vector."""
    n = norm(space, x)
    if n == 0.0:
        raise ValueError("cannot normalize the zero vector")
    return np.asarray(x, dtype=complex) / n


def require_unit(space: WeightedSpace, e: np.ndarray, tol: float = UNIT_TOL) -> None:
    n = norm(space, e)
    if abs(n - 1.0) > tol:
        raise NonUnitError(f"expected a unit vector, got norm {n!r}")


def residual(space: WeightedSpace, m: np.ndarray, e: np.ndarray) -> np.ndarray:
    """Component of ``m`` orthogonal to the unit vector ``e``: ``m - <m,e> e``.

    Satisfies ``||residual||^2 = ||m||^2 - |<m,e>|^2``.
    """
    _conform(space, m, e)
    require_unit(space, e)
    return m - _inner(space, m, e) * e
