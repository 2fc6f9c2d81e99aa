"""
Second pages
============

Filtering the double complex by columns or by rows gives two spectral
sequences.  When the second factor is the path category of an acyclic
graph only two rows survive, and each H_n sits in a short exact sequence.
"""

from zsmatch.catalog import fork_pair, matched_pairs
from zsmatch.spectral import page2, two_row_check

S3 = matched_pairs()["S3"]
print(page2(S3, "hv", 3).to_text())
print(page2(S3, "vh", 3).to_text())

fork = fork_pair()
rep = two_row_check(fork, 3)
print(rep["page"].to_text())
print("rows q >= 2 vanish:", rep["vanishing"])
for n, ok in rep["ses"][1:]:
    print(f"  n={n}: 0 -> E2[{n},0] -> H_{n} -> E2[{n - 1},1] -> 0 consistent: {ok}")
