"""
Labels from the argument map
============================

As u -> -infinity, Theta = Arg(W/Z, 1/prod w) of the critical points lands on
a grid of roots of unity in the 2-torus.  The nearest grid point gives each
point its label (k, l).
"""

# %%
from lgbundle import BundleSpec, grid_deviation, labeled_set, limit_grid, theta, verify_grid_convergence

spec = BundleSpec(1, (1,))
for g, lab in limit_grid(spec):
    print(lab, g.coords)

# %%
cs = labeled_set(spec, T=12.0)
for p in cs.points:
    print(p.label, tuple(round(x, 5) for x in theta(spec, p).coords))
print("distance to grid:", grid_deviation(spec, cs))

# %%
# The approach is only exponential at rate e^{-T/(s+1)}, so bigger s needs
# bigger T for the same accuracy.
for s, a in [(1, (1,)), (2, (1,)), (3, (1, 2))]:
    rep = verify_grid_convergence(BundleSpec(s, a), T_values=(2, 6, 12))
    print(BundleSpec(s, a), ["%.1e" % x for x in rep.details["grid_deviation"]])
