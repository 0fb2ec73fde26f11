"""Walk through the extremal graphs at the minimum-degree threshold."""
from fractions import Fraction

from aesstab import (ExtremalParams, aes_extremal, chromatic_number, clique_census,
                     modified_extremal, turan_graph)
from aesstab.graph import min_degree

# The Turan graph T_r(n) is the densest K_{r+1}-free graph. Its minimum degree
# is floor((1 - 1/r) n), and one more unit of degree forces a K_{r+1}.
for r in (2, 3, 4):
    g = turan_graph(12, r)
    print(f"T_{r}(12): min degree {min_degree(g)}, K_{r + 1} copies "
          f"{clique_census(g, r + 1).total}")

# Below (1 - 3/(3r-1)) n the picture changes: E_r(n) is K_{r+1}-free and
# regular at exactly that degree, yet it needs r+1 colours.
print()
print(" r   n  degree  (1-3/(3r-1))n  K_(r+1)  chi")
for r in (2, 3, 4):
    for k in (1, 2, 3):
        n = (3 * r - 1) * k
        g = aes_extremal(n, r)
        bar = Fraction(3 * r - 4, 3 * r - 1) * n
        print(f"{r:2d} {n:3d} {min_degree(g):7d} {str(bar):>14} "
              f"{clique_census(g, r + 1).total:8d} {chromatic_number(g):4d}")

# Filling the five C5 blow-up sets with a C4-free gadget lifts the minimum
# degree above the threshold. The result still avoids the blow-up K_3(4),
# and the construction reports what it achieved.
con = modified_extremal(ExtremalParams(r=2, n=25, c=Fraction(2, 5)))
print()
print("modified construction, r=2, n=25:", {k: con.info[k] for k in
                                            ("y_sizes", "min_degree", "blowup_free")})
