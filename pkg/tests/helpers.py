import math
from pathlib import Path

from gruss import WeightedSpace, normalize

ROOT = Path(__file__).resolve().parents[1]
INSTANCES = ROOT / "demos" / "instances"
R2 = 1 / math.sqrt(2)

criteria: list[str] = []


def random_vector(rng, n, complex_mode, scale=1.0):
    z = rng.standard_normal(n)
    if complex_mode:
        z = z + 1j * rng.standard_normal(n)
    return (scale * z).astype(complex)


def random_space(rng, n):
    return WeightedSpace(rng.uniform(0.1, 3.0, n))


def random_unit(rng, space, complex_mode):
    return normalize(space, random_vector(rng, space.dim, complex_mode))


def rel_close(a, b, rtol, floor=1.0):
    return abs(a - b) <= rtol * max(floor, abs(a), abs(b))
