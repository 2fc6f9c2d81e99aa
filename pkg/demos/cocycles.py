"""
Circle-valued 2-cocycles
========================

Phases are written additively in Q/Z.  A total 2-cocycle on a matched pair
transfers to a categorical 2-cocycle on the product category, and classes
that are nontrivial stay nontrivial.
"""

from fractions import Fraction

from zsmatch.catalog import klein_pair
from zsmatch.category import cyclic_group_category
from zsmatch.cocycle import (
    categorical_cochain,
    is_cohomologous,
    psi2,
    total_cocycle_basis,
    validate_categorical_2cocycle,
    validate_total_2cocycle,
)
from zsmatch.matched_pair import zs_category

# on Z/2 the cochain c(a, a) = 1/2 is a cocycle, and it is d of b(a) = 1/4
C = cyclic_group_category(2)
c = categorical_cochain(C, [["g1", "g1", "1/2"]])
print(validate_categorical_2cocycle(C, c)["ok"], is_cohomologous(C, {}, c))

# Z/2 x Z/2 has H_2 = Z/2, so there is one nontrivial class
mp = klein_pair()
for order, make in total_cocycle_basis(mp):
    print("generator of order", order or "infinity")
order, make = next(g for g in total_cocycle_basis(mp) if g[0] == 2)
phi = make(Fraction(1, 2))
print(phi.to_json(mp))
print("total cocycle:", validate_total_2cocycle(mp, phi, mode="dual")["ok"])

Z = zs_category(mp)
c = psi2(mp, phi)
for (i, j), v in sorted(c.items()):
    print(f"  c({Z.morphism_ids[i]}, {Z.morphism_ids[j]}) = {v}")
print("categorical cocycle:", validate_categorical_2cocycle(Z, c)["ok"])
print("cohomologous to 0:", is_cohomologous(Z, {}, c)["cohomologous"])
