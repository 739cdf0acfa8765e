"""
The bound family on one instance
================================

Each bound gets the same pair (x, y). The chain
``|G| <= SCHWARTZ <= T1`` always holds for admissible input. T2 and C3
trade the width for a ratio of box endpoints.
"""

import numpy as np

from gruss import (
    Box,
    WeightedSpace,
    bound_corollary3,
    bound_schwartz,
    bound_theorem1,
    bound_theorem2,
    gruss_functional,
    normalize,
    sample_admissible,
)

rng = np.random.default_rng(7)
space = WeightedSpace(rng.uniform(0.5, 1.5, 4))
e = normalize(space, np.ones(4))
bx, by = Box(1, 3), Box(2, 2.5)

x = sample_admissible(space, e, bx, rng, 1, complex_mode=False)[0]
# y follows x, so the functional is far from zero
y = by.center * e + (x - bx.center * e) * (by.radius / bx.radius)
print("G(x, y) =", gruss_functional(space, x, y, e))

for fn in (bound_schwartz, bound_theorem1, bound_theorem2, bound_corollary3):
    rep = fn(space, x, y, e) if fn is bound_schwartz else fn(space, x, y, e, bx, by)
    print(f"{rep.bound_id.value:9s} bound={rep.bound_value:.6f}  ratio={rep.ratio:.4f}  {rep.verdict()}")

# outside the box the bounds still report, but flag the failed condition
rep = bound_theorem1(space, 10 * x, y, e, bx, by)
print("\ninadmissible x:", rep.verdict(), "-", rep.reason)
