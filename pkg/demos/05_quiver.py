"""
The quiver of the collection
============================

One arrow per generator divisor that stays inside the label box, colored by
family, with the commuting squares as relations.
"""

# %%
from lgbundle import BundleSpec, build_quiver, emit_dot, emit_json, quiver_from_json

q = build_quiver(BundleSpec(1, (1,)))
print(emit_dot(q))

# %%
q3 = build_quiver(BundleSpec(3, (1, 2)))
print(q3.name, len(q3.arrows), q3.arrows_by_family(), len(q3.relations), "relations")

# %%
# JSON round trip.
print(quiver_from_json(emit_json(q3)) == q3)
