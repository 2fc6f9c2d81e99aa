"""
Model pairs are acyclic
=======================

The model pair (E_n, F_n) lives on the triangle of lattice points p + q <= n.
Its product category is a poset, so every homology theory sees a point.
Composable tuples of the product give maps out of these models, which is
how the comparison maps are shown to be natural.
"""

from zsmatch.abelian import homology_groups
from zsmatch.chain_maps import matched_complexes
from zsmatch.matched_pair import induced_morphism, model_pair, semidirect_s3, zs_category

for n in range(4):
    M = model_pair(n)
    print(f"n={n}: |Gamma_n| = {M.gamma.n_morphisms}")

M = model_pair(2)
mc = matched_complexes(M.mp, 3)
print("H^bowtie:", [str(g) for g in homology_groups(mc.bowtie, 3)])
print("H^Delta: ", [str(g) for g in homology_groups(mc.diagonal, 3)])

# a composable pair in S3 picks out a map from the model pair with n = 2
mp = semidirect_s3()
Z = zs_category(mp)
h = induced_morphism(mp, (1, 4))
Zm = zs_category(h.model.mp)
for m in range(Zm.n_morphisms):
    print(f"  {Zm.morphism_ids[m]:>12} -> {Z.morphism_ids[h.on_product(m)]}")
