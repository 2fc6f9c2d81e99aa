"""
Graphs of odometers
===================

An edge e with weight p(e) acts like one digit of an odometer in base p(e).
Paths are numbers whose least significant digit is the first edge; adding
one carries to the right.  The homology has a closed form through the
matrix M and the ordinary homology of the graph.
"""

from zsmatch.catalog import odometer_loop
from zsmatch.odometer import (
    OdometerPath,
    WeightedGraph,
    act,
    matrix_M,
    odometer_homology,
    random_strongly_connected,
    verify_decomposition,
)

E = odometer_loop(2)

# counting from 0 to 8 on a three-digit binary odometer
xi = OdometerPath(("e", "e", "e"), 0)
for _ in range(9):
    print([m for _e, m in xi.digits(E)], end=" ")
    xi, carry = act(E, 1, xi)
print("carry out:", carry)

for p in (1, 2, 3):
    r = odometer_homology(odometer_loop(p))
    h1 = r["H1"] or "extension of {quotient} by {sub}".format(**r["H1_ses"])
    print(f"p={p}: H0={r['H0']} H1={h1} H2={r['H2']}  ({r['gcd_criterion']['text']})")

# two vertices with weights 2 and 3 in a cycle, plus a weight-1 loop
E = WeightedGraph(["u", "v"], [("a", "u", "v", 2), ("b", "v", "u", 3), ("c", "u", "u", 1)])
print(matrix_M(E).to_dense())
r = odometer_homology(E)
ses = r["H1_ses"]
print(f"0 -> {ses['sub']} -> H_1 -> {ses['quotient']} -> 0, H_2 = {r['H2']}")

# the bounded-length check behind the closed form
for seed in range(3):
    G = random_strongly_connected(seed, max_weight=3)
    rep = verify_decomposition(G, 4)
    print(G.name, "ok" if rep["ok"] else "FAILED", rep["checked"], "paths")
