"""
Integrals over a discrete measure
=================================

A sample of masses and function values turns the vector statements into
integral ones. The pointwise box condition implies the integrated one,
and the mean-value form needs no carrier h.
"""

import numpy as np

from gruss import Box
from gruss.measures import (
    MeasureSample,
    check_cor5,
    pointwise_sufficient,
    ratio_remark5,
)

# midpoint rule for f = g = x on [1, 3]
s = MeasureSample.midpoint(lambda t: t, lambda t: t, 1.0, 3.0, 200)
box = Box(1, 3)
print("pointwise:", pointwise_sufficient(s, box))
rep = check_cor5(s, box, box)
print(f"mean form: |J|={rep.measured:.6f}  bound={rep.bound_value:.6f}  ratio={rep.ratio:.4f}")
# the continuous value is Var(x) = 1/3 on [1, 3]

# the two-point measure hits 1/4 on the left and 1/3 on the right
r = ratio_remark5(MeasureSample([1, 1], [1, 3], [1, 3]), box, box)
print("two-point ratio:", r.left, "<=", r.right)

# one stray value breaks the pointwise condition and is named by index
bad = MeasureSample(np.ones(4), [1, 2, 3.5, 2], [1, 2, 3, 2])
print(check_cor5(bad, box, box).reason)
