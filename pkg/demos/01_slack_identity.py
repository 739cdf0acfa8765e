"""
Two ways to say "x lives in a box"
==================================

The product form ``Re<Ax - x, x - ae> >= 0`` and the ball form
``||x - (a+A)/2 e|| <= |A-a|/2`` are the same condition. Their slacks agree
to rounding for any x, admissible or not.
"""

import numpy as np

from gruss import (
    Box,
    WeightedSpace,
    check,
    normalize,
    sample_admissible,
    slack_ball,
    slack_re,
)

rng = np.random.default_rng(0)
space = WeightedSpace(rng.uniform(0.2, 2.0, 5))
e = normalize(space, rng.standard_normal(5) + 1j * rng.standard_normal(5))
box = Box(1 - 1j, 3 + 2j)

# a few random vectors, most of them far outside the ball
for _ in range(5):
    x = 3 * (rng.standard_normal(5) + 1j * rng.standard_normal(5))
    print(f"slack_re={slack_re(space, x, e, box): .6e}  slack_ball={slack_ball(space, x, e, box): .6e}")

# the center of the box is the most admissible point: both slacks equal |A-a|^2/4
print("center:", check(space, box.center * e, e, box))
print("|A-a|^2/4 =", box.width**2 / 4)

# sampled points are uniform in the ball, so they always pass
xs = sample_admissible(space, e, box, seed=1, count=1000)
worst = min(slack_re(space, x, e, box) for x in xs)
print(f"1000 samples, smallest slack {worst:.3e}")
