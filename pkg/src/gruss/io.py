"""JSON instance files and full-precision report serialization.

An instance file is one JSON object::

    {
      "mode": "real" | "complex",
      "weights": [w1, ..., wn],
      "x": [...], "y": [...], "e": [...],        # vector runs
      "f": [...], "g": [...], "h": [...],        # integral runs (h optional)
      "boxes": {"x": [lo, hi], "y": [lo, hi], "combination": [lo, hi]},
      "lambda": 0.5,                             # optional
      "sign": "+" | "+-"                         # optional, default "+"
    }

Complex entries are ``[re, im]`` pairs; in real mode such pairs are
rejected so that mode mismatches surface early. A file describes either a
vector run (has ``e``) or an integral run (has ``f`` and ``g``), never both.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .conditions import Box, Combination
from .errors import GrussError

VECTOR_FIELDS = ("x", "y", "e")
FUNCTION_FIELDS = ("f", "g", "h")
BOX_NAMES = ("x", "y", "f", "g", "combination")
_SIGNS = {"+": False, "+-": True, "±": True, "pm": True}

__all__ = ["InstanceError", "InstanceFile", "dumps", "fmt", "load_instance", "parse_instance"]


class InstanceError(GrussError):
    """Malformed instance file; the message names the offending field."""


@dataclass(frozen=True, eq=False)
class InstanceFile:
    mode: str
    weights: np.ndarray
    vectors: dict[str, np.ndarray]
    boxes: dict[str, Box]
    lam: float | None = None
    two_sided: bool = False
    raw: dict = field(default_factory=dict, repr=False)

    @property
    def kind(self) -> str:
        return "vector" if "e" in self.vectors else "integral"


def _scalar(value, mode: str, where: str) -> complex:
    if isinstance(value, bool):
        raise InstanceError(f"{where}: expected a number, got {value!r}")
    if isinstance(value, (int, float)):
        z = complex(float(value), 0.0)
    elif isinstance(value, list):
        if mode == "real":
            raise InstanceError(f"{where}: [re, im] pair not allowed in real mode")
        if len(value) != 2 or not all(
            isinstance(t, (int, float)) and not isinstance(t, bool) for t in value
        ):
            raise InstanceError(f"{where}: complex entries must be [re, im] number pairs")
        z = complex(float(value[0]), float(value[1]))
    else:
        raise InstanceError(f"{where}: expected a number, got {value!r}")
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise InstanceError(f"{where}: non-finite value")
    return z


def _sequence(data: dict, name: str, mode: str, n: int) -> np.ndarray:
    values = data[name]
    if not isinstance(values, list):
        raise InstanceError(f"{name}: expected a list")
    if len(values) != n:
        raise InstanceError(f"{name}: length {len(values)} does not match {n} weights")
    out = np.array([_scalar(v, mode, f"{name}[{i}]") for i, v in enumerate(values)], dtype=complex)
    out.setflags(write=False)
    return out


def parse_instance(data) -> InstanceFile:
    """Validate a decoded JSON document."""
    if not isinstance(data, dict):
        raise InstanceError("top level: expected a JSON object")
    mode = data.get("mode", "real")
    if mode not in ("real", "complex"):
        raise InstanceError(f"mode: expected 'real' or 'complex', got {mode!r}")

    if "weights" not in data:
        raise InstanceError("weights: missing")
    weights = data["weights"]
    if not isinstance(weights, list) or not weights:
        raise InstanceError("weights: expected a non-empty list")
    w = []
    for i, v in enumerate(weights):
        z = _scalar(v, "real", f"weights[{i}]")
        if not z.real > 0:
            raise InstanceError(f"weights[{i}]: must be positive, got {v!r}")
        w.append(z.real)
    n = len(w)

    has_vec = "e" in data
    has_fun = "f" in data or "g" in data
    if has_vec == has_fun:
        raise InstanceError("e: a file needs either e (vector run) or f and g (integral run)")
    fields = VECTOR_FIELDS if has_vec else FUNCTION_FIELDS
    stray = [k for k in (FUNCTION_FIELDS if has_vec else VECTOR_FIELDS) if k in data]
    if stray:
        raise InstanceError(f"{stray[0]}: not allowed together with {'e' if has_vec else 'f/g'}")
    if has_fun:
        for k in ("f", "g"):
            if k not in data:
                raise InstanceError(f"{k}: missing")
    vectors = {k: _sequence(data, k, mode, n) for k in fields if k in data}

    boxes = {}
    raw_boxes = data.get("boxes", {})
    if not isinstance(raw_boxes, dict):
        raise InstanceError("boxes: expected an object of named [lo, hi] pairs")
    for name, pair in raw_boxes.items():
        if name not in BOX_NAMES:
            raise InstanceError(f"boxes.{name}: unknown box name")
        if not isinstance(pair, list) or len(pair) != 2:
            raise InstanceError(f"boxes.{name}: expected [lo, hi]")
        boxes[name] = Box(
            _scalar(pair[0], mode, f"boxes.{name}[0]"), _scalar(pair[1], mode, f"boxes.{name}[1]")
        )

    lam = data.get("lambda")
    if lam is not None:
        if isinstance(lam, bool) or not isinstance(lam, (int, float)):
            raise InstanceError("lambda: expected a number")
        try:
            Combination(lam)
        except ValueError as exc:
            raise InstanceError(f"lambda: {exc}") from None
        lam = float(lam)
    sign = data.get("sign", "+")
    if sign not in _SIGNS:
        raise InstanceError(f"sign: expected '+' or '+-', got {sign!r}")

    return InstanceFile(mode, np.array(w), vectors, boxes, lam, _SIGNS[sign], data)


def load_instance(path) -> InstanceFile:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise InstanceError(f"cannot read {path}: {exc.strerror}") from None
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InstanceError(f"line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    return parse_instance(data)


def fmt(x: float) -> str:
    """17 significant digits: enough to round-trip any double."""
    return format(x, ".17g")


def dumps(obj, indent: int = 2, _level: int = 0) -> str:
    """JSON with every float written at 17 significant digits.

    Complex numbers become ``[re, im]``. Non-finite floats become ``null``.
    """
    pad = " " * (indent * (_level + 1))
    end = " " * (indent * _level)
    if obj is None or isinstance(obj, bool):
        return json.dumps(obj)
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return fmt(float(obj)) if math.isfinite(obj) else "null"
    if isinstance(obj, complex):
        return dumps([obj.real, obj.imag], indent, _level)
    if isinstance(obj, str):
        return json.dumps(obj, ensure_ascii=False)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{json.dumps(str(k), ensure_ascii=False)}: {dumps(v, indent, _level + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(obj, (list, tuple, np.ndarray)):
        if len(obj) == 0:
            return "[]"
        items = [dumps(v, indent, _level + 1) for v in obj]
        if all("\n" not in s for s in items):
            return "[" + ", ".join(items) + "]"
        return "[\n" + ",\n".join(pad + s for s in items) + "\n" + end + "]"
    raise TypeError(f"cannot serialize {type(obj).__name__}")
