"""
Critical points of the LG potential on the Hirzebruch surface
==============================================================

The logarithmic critical equations of f_u have (s+1)(r+1) solutions.  For
s = 1, a = (1,) that is four points, which at u = 0 are governed by the
quartic C^4 + C^3 - 1.
"""

# %%
import numpy as np

from lgbundle import BundleSpec, CoeffVector, solve_crit

spec = BundleSpec(1, (1,))
cs = solve_crit(spec, CoeffVector.unit(spec, 0.0))
for p in cs.points:
    print(np.round(p.coords, 6), f"residual {p.residual:.1e}")

# %%
# Compare with the quartic.  Here z = C, so the z-coordinates are its roots.
print(np.sort_complex(np.roots([1, 1, 0, 0, -1])))
print(np.sort_complex(cs.array()[:, 0]))

# %%
# Larger bundles work the same way; the count is always N.
for s, a in [(2, (1,)), (2, (0, 2)), (3, (1, 2))]:
    spec = BundleSpec(s, a)
    cs = solve_crit(spec, CoeffVector.unit(spec, -3.0))
    print(spec, len(cs), "points, worst residual", f"{cs.max_residual:.1e}")
