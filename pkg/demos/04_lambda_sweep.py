"""
Convex combinations and the lambda(1 - lambda) factor
=====================================================

When only ``lam*x + (1-lam)*y`` is known to be admissible, the implied
constant of the extremal family is ``lam(1-lam)/4``, largest at lam = 1/2.
"""

import numpy as np

from gruss.sharpness import sweep_lambda

lams = np.linspace(0.05, 0.95, 19)
rows = sweep_lambda(lams)
for row in rows:
    bar = "#" * int(round(row.implied_constant * 400))
    print(f"lam={row.parameter:.2f}  C={row.implied_constant:.6f}  {bar}")

best = max(rows, key=lambda r: r.implied_constant)
print("\nlargest at lam =", best.parameter, "with err", max(r.abs_error for r in rows))
