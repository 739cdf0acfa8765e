"""
How close is the constant 1/4?
==============================

For real boxes ``0 < a < A`` the two-point family with ``q = a/A`` gives
an implied constant ``(1 - q^2)/4``. As q goes to 0 it approaches 1/4, so
no smaller constant works.
"""

from gruss.sharpness import extremal_corollary3, sweep_q

for row in sweep_q([0.9, 0.5, 0.1, 0.01, 0.001]):
    print(
        f"q={row.parameter:<6} implied={row.implied_constant:.9f}  "
        f"predicted={row.analytic_prediction:.9f}  err={row.abs_error:.1e}"
    )

# the q = 1/3 member, spelled out
inst, r = extremal_corollary3(1, 3)
print("\nx =", inst.x.real, " e =", inst.e.real)
print("measured |G| =", r.measured, " normalizer =", r.bound_normalizer)
