"""
Monodromy around toric loops
============================

Turning the coefficients of f once around the loop of a divisor D permutes
the critical points.  Read in labels, the permutation is a translation by
the degree pair of D.  When l wraps past r the grid identifies
(k, l + r + 1) with (k + sum(a), l), which shows up as a carry into k.
"""

# %%
from lgbundle import BundleSpec, ToricDivisor, labeled_set, monodromy_permutation
from lgbundle.monodromy import act_grid, act_permutation

spec = BundleSpec(1, (1,))
base = labeled_set(spec, 12.0)
for g in ["v0", "v1", "e0", "e1"]:
    perm = monodromy_permutation(spec, ToricDivisor.generator(spec, g), 12.0, base=base)
    print(g, perm.mapping)

# %%
# Plain translation mod (s+1, r+1) against translation with the carry.
D = ToricDivisor.generator(spec, "e0")
numeric = monodromy_permutation(spec, D, 12.0, base=base)
print("plain:", numeric == act_permutation(spec, D))
print("carry:", numeric == act_permutation(spec, D, act_grid))

# %%
# Loops compose: two e0 loops equal the loop of 2 V(e0).
twice = monodromy_permutation(spec, D + D, 12.0, base=base)
print(twice == numeric.then(numeric))
