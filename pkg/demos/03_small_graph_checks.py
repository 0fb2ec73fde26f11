"""Exhaustive and sampled checks of the minimum-degree results on tiny graphs."""
from aesstab import analyze_target, biex_bounds, complete_multipartite
from aesstab.oracle import (biex_enumerate, biex_exact, verify_aes_small,
                            verify_kst_small, verify_zarankiewicz_small)

# Every labeled graph on n vertices is one integer below 2^C(n,2); numpy sweeps
# them in chunks. At n=7 that is about two million graphs.
for n in range(3, 8):
    rep = verify_aes_small(n, 2)
    print(f"triangle-free, delta > 2n/5, n={n}: {rep.instances_checked:8d} graphs, "
          f"{rep.params['hypothesis_graphs']:3d} qualify, "
          f"{len(rep.counterexamples)} not bipartite")

rep = verify_zarankiewicz_small(7, 2)
print("\ndelta > n/2 forces a triangle, n=7:", "ok" if rep.verified else "FAILED")
rep = verify_kst_small(12, 2, 2, samples=200, seed=7)
print("C4 search agreement and edge bound, n=12:", rep.params)

# ex(n, C4) by two unrelated searches, next to the two-sided bounds used when
# n is too large to search.
K222 = analyze_target(complete_multipartite([2, 2, 2]))
print("\n n  branch&bound  enumeration  bounds without the exact cap")
for n in range(2, 9):
    enum = biex_enumerate(n, K222) if n <= 7 else "-"
    b = biex_bounds(n, K222, exact_cap=0)
    print(f"{n:2d} {biex_exact(n, K222):13d} {enum!s:>12}  {b.lower}..{b.upper}")
