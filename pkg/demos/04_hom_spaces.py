"""
Hom spaces from sections and from divisors
==========================================

dim Hom(E_p, E_q) counts sections of E_q - E_p.  The same number comes out
of counting effective divisors in Div^+(p) that move p to q.
"""

# %%
from lgbundle import BundleSpec, div_plus, hom_mon_table, hom_table, verify_composition, verify_theorem_B
from lgbundle.bundle import collection_labels

spec = BundleSpec(1, (1,))
print(collection_labels(spec))
print(hom_table(spec).dims)
print(hom_mon_table(spec))

# %%
for D in div_plus(spec, (0, 0)):
    print(D)

# %%
for s, a in [(2, (1,)), (2, (0, 2)), (3, (1, 2))]:
    spec = BundleSpec(s, a)
    print(verify_theorem_B(spec).summary())
    print(verify_composition(spec).summary())
