"""Run the decomposition on a few small hosts and read its output."""
from aesstab import (analyze_target, build_graph, complete_graph, complete_multipartite,
                     cycle_graph, lower_bound_graph, stability_decompose, turan_graph)
from aesstab.oracle import min_deletion_to_r_partite

K222 = analyze_target(complete_multipartite([2, 2, 2]))
K4 = analyze_target(complete_graph(4))
print(f"target K_(2,2,2): chi={K222.chi} sigma={K222.sigma} "
      f"reducts={[b.edges() for b in K222.reducts]}")

# K_{5,5} plus one edge: the extra edge makes five triangles but no K_(2,2,2),
# so the answer is a partition and one deleted edge.
k55e = build_graph(10, complete_multipartite([5, 5]).edges() + [(0, 1)])
res = stability_decompose(k55e, K222)
print("\nK55+e:", res.mode, sorted(res.partition.deleted), "source:", res.partition.source)

# A balanced bipartite graph with a C5 inside one side. C5 is C4-free, so it
# is the densest thing we can hide in a side without creating K_(2,2,2).
lbg = lower_bound_graph(10, 2, K222, witness=cycle_graph(5)).graph
res = stability_decompose(lbg, K222)
rep = res.report(oracle_opt=min_deletion_to_r_partite(lbg, 2))
print("\nlower-bound graph:", {k: rep[k] for k in ("mode", "deleted", "D", "Z",
                                                    "part_sizes", "ratio")})
print("threshold clamps:")
for line in rep["trace"]["clamps"]:
    print("   ", line)

# Three extra edges inside the parts of T_3(12) plant a K4, and the
# decomposition returns an embedding instead of a partition.
planted = build_graph(12, turan_graph(12, 3).edges() + [(0, 1), (4, 5), (8, 9)])
res = stability_decompose(planted, K4)
print("\nplanted K4:", res.mode, "image", sorted(res.embedding.image()))
