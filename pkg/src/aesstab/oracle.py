"""Brute-force ground truth.

Everything here deliberately avoids the fast paths in :mod:`aesstab.cliques`
and :mod:`aesstab.decompose` so it can be used to check them.  Exhaustive
sweeps over labeled graphs encode a graph on ``n`` vertices as an integer
whose bit ``e`` is the ``e``-th pair of ``itertools.combinations(range(n), 2)``
and are vectorized with numpy in chunks.
"""
from __future__ import annotations

import csv
import io
import itertools
import time
from dataclasses import dataclass, field
from math import comb, factorial
from pathlib import Path

import numpy as np

from .errors import CapacityError, InputError
from .graph import (Graph, TargetSpec, build_graph, chromatic_number,
                    complete_multipartite, random_graph)
from .cliques import clique_census, find_kts, find_subgraph, kst_bound
from .io import serialize_graph6

NAIVE_CLIQUE_MAX_N = 16
NAIVE_CLIQUE_MAX_K = 6
LABELLING_CAP = 2 ** 22
EXHAUSTIVE_MAX_N = 7
SAMPLED_MAX_N = 16
BIEX_MAX_N = 8
BIEX_ENUM_MAX_N = 7
KST_MAX_N = 14
CHUNK = 1 << 20


@dataclass
class OracleReport:
    """Outcome of a verification sweep."""

    name: str
    instances_checked: int
    counterexamples: list[str] = field(default_factory=list)
    elapsed: float = 0.0
    params: dict = field(default_factory=dict)

    @property
    def verified(self) -> bool:
        return not self.counterexamples

    CSV_FIELDS = ("suite", "instances_checked", "counterexamples", "verified",
                  "elapsed_s", "params")

    def csv_row(self) -> dict:
        return {
            "suite": self.name,
            "instances_checked": self.instances_checked,
            "counterexamples": len(self.counterexamples),
            "verified": int(self.verified),
            "elapsed_s": f"{self.elapsed:.3f}",
            "params": ";".join(f"{k}={v}" for k, v in sorted(self.params.items())),
        }

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=self.CSV_FIELDS, lineterminator="\n")
        w.writeheader()
        w.writerow(self.csv_row())
        return buf.getvalue()

    def write_sidecar(self, path: str | Path) -> None:
        """Counterexamples as one graph6 string per line."""
        Path(path).write_text("".join(g6 + "\n" for g6 in self.counterexamples))


# ------------------------------------------------------- naive primitives

def naive_count_cliques(g: Graph, k: int) -> int:
    """Count K_k by testing every k-subset."""
    if g.n > NAIVE_CLIQUE_MAX_N or k > NAIVE_CLIQUE_MAX_K:
        raise CapacityError(
            f"naive_count_cliques caps are n <= {NAIVE_CLIQUE_MAX_N}, k <= {NAIVE_CLIQUE_MAX_K}")
    if k < 1:
        raise InputError("k must be positive")
    return sum(1 for c in itertools.combinations(range(g.n), k)
               if all(g.has_edge(a, b) for a, b in itertools.combinations(c, 2)))


def naive_find_subgraph(g: Graph, h: Graph) -> tuple[int, ...] | None:
    """Try every vertex subset and every bijection onto it."""
    if h.n > g.n:
        return None
    if comb(g.n, h.n) * factorial(h.n) > 5 * 10 ** 7:
        raise CapacityError(f"naive_find_subgraph too large: n={g.n}, v(h)={h.n}")
    hedges = h.edges()
    for sub in itertools.combinations(range(g.n), h.n):
        inside = sum(1 for a, b in itertools.combinations(sub, 2) if g.has_edge(a, b))
        if inside < len(hedges):
            continue
        for perm in itertools.permutations(sub):
            if all(g.has_edge(perm[a], perm[b]) for a, b in hedges):
                return perm
    return None


def _labellings(n: int, r: int, start: int, stop: int) -> np.ndarray:
    # rows = labellings with vertex 0 fixed to colour 0; column v = colour of v
    idx = np.arange(start, stop, dtype=np.int64)
    out = np.zeros((stop - start, n), dtype=np.int8)
    for v in range(n - 1, 0, -1):
        out[:, v] = idx % r
        idx //= r
    return out


def min_deletion_to_r_partite(g: Graph, r: int) -> int:
    """Exact minimum number of edges whose removal leaves an r-partite graph.

    Minimises the number of monochromatic edges over all r-labellings of the
    vertices (vertex 0 pinned to colour 0).
    """
    if r < 1:
        raise InputError("r must be positive")
    edges = g.edges()
    if r == 1 or not edges:
        return len(edges) if r == 1 else 0
    if r >= g.n:
        return 0
    total = r ** (g.n - 1)
    if total > LABELLING_CAP:
        raise CapacityError(f"min_deletion_to_r_partite: {r}^{g.n - 1} labellings exceeds cap")
    us = np.array([u for u, _ in edges])
    vs = np.array([v for _, v in edges])
    best = len(edges)
    step = max(1024, (1 << 24) // len(edges))
    for start in range(0, total, step):
        lab = _labellings(g.n, r, start, min(total, start + step))
        mono = (lab[:, us] == lab[:, vs]).sum(axis=1)
        best = min(best, int(mono.min()))
        if best == 0:
            break
    return best


# --------------------------------------------- exhaustive labeled sweeps

def _pair_index(n: int) -> dict[tuple[int, int], int]:
    return {p: i for i, p in enumerate(itertools.combinations(range(n), 2))}


def _clique_masks(n: int, k: int) -> list[int]:
    idx = _pair_index(n)
    return [sum(1 << idx[p] for p in itertools.combinations(c, 2))
            for c in itertools.combinations(range(n), k)]


def _incidence_masks(n: int) -> list[int]:
    idx = _pair_index(n)
    return [sum(1 << i for (a, b), i in idx.items() if v in (a, b)) for v in range(n)]


def _mask_to_graph(n: int, mask: int) -> Graph:
    return build_graph(n, [p for i, p in enumerate(itertools.combinations(range(n), 2))
                           if mask >> i & 1])


def _contains_any(masks: np.ndarray, patterns: list[int]) -> np.ndarray:
    hit = np.zeros(masks.shape, dtype=bool)
    for p in patterns:
        pv = np.uint32(p)
        hit |= (masks & pv) == pv
    return hit


def _min_degree_vec(masks: np.ndarray, n: int) -> np.ndarray:
    inc = _incidence_masks(n)
    mind = np.full(masks.shape, n, dtype=np.int64)
    for m in inc:
        mind = np.minimum(mind, np.bitwise_count(masks & np.uint32(m)).astype(np.int64))
    return mind


def _labeled_chunks(n: int):
    total = 1 << comb(n, 2)
    for start in range(0, total, CHUNK):
        yield np.arange(start, min(total, start + CHUNK), dtype=np.uint32)


def verify_aes_small(n: int, r: int = 2, samples: int = 2000, seed: int = 0) -> OracleReport:
    """Check: delta(G) > (1 - 3/(3r-1)) n and K_{r+1}-free imply chi(G) <= r.

    Exhaustive over labeled graphs for n <= 7, sampled above that.  The
    inequality is strict and evaluated in integers.
    """
    if r < 2:
        raise InputError("r must be at least 2")
    t0 = time.perf_counter()
    params = {"n": n, "r": r}
    if n <= EXHAUSTIVE_MAX_N:
        cliques = _clique_masks(n, r + 1)
        checked = hyp = 0
        bad: list[str] = []
        for masks in _labeled_chunks(n):
            checked += len(masks)
            mind = _min_degree_vec(masks, n) if n else np.zeros(masks.shape, dtype=np.int64)
            sel = ((3 * r - 1) * mind > (3 * r - 4) * n) & ~_contains_any(masks, cliques)
            for m in masks[sel]:
                hyp += 1
                g = _mask_to_graph(n, int(m))
                if chromatic_number(g) > r:
                    bad.append(serialize_graph6(g))
        params.update(mode="exhaustive", hypothesis_graphs=hyp)
        return OracleReport("aes", checked, bad, time.perf_counter() - t0, params)
    if n > SAMPLED_MAX_N:
        raise CapacityError(f"verify_aes_small: n={n} exceeds cap {SAMPLED_MAX_N}")
    rng = np.random.default_rng(seed)
    bad, hyp = [], 0
    for g in _near_partite_samples(n, r, samples, rng):
        if (3 * r - 1) * min(g.degrees()) <= (3 * r - 4) * n:
            continue
        if naive_count_cliques(g, r + 1):
            continue
        hyp += 1
        if chromatic_number(g) > r:
            bad.append(serialize_graph6(g))
    params.update(mode="sampled", seed=seed, hypothesis_graphs=hyp)
    return OracleReport("aes", samples, bad, time.perf_counter() - t0, params)


def _near_partite_samples(n: int, r: int, count: int, rng):
    """Dense graphs close to complete r-partite, plus C5 blow-up hybrids.

    Sampling G(n, p) almost never meets a high minimum degree without a
    K_{r+1}; these families concentrate on the hypothesis boundary.
    """
    for i in range(count):
        if i % 4 == 3 and n >= 5:
            # blow-up of C5 joined to r-2 extra independent parts
            labels = rng.integers(0, r + 3, size=n)
            def adjacent(a, b):
                la, lb = labels[a], labels[b]
                if la == lb:
                    return False
                if la >= 5 or lb >= 5:
                    return True
                return (la - lb) % 5 in (1, 4)
            p = 1.0
        else:
            labels = rng.integers(0, r, size=n)
            adjacent = lambda a, b: labels[a] != labels[b]
            p = rng.uniform(0.8, 1.0)
        extra = rng.uniform(0.0, 0.15)
        edges = []
        for a in range(n):
            for b in range(a + 1, n):
                if adjacent(a, b):
                    if rng.random() < p:
                        edges.append((a, b))
                elif rng.random() < extra:
                    edges.append((a, b))
        yield build_graph(n, edges)


def verify_zarankiewicz_small(n: int, r: int = 2, samples: int = 2000,
                              seed: int = 0) -> OracleReport:
    """Check: delta(G) > (1 - 1/r) n implies G contains K_{r+1}.

    Also confirms the Turan graph as the boundary witness: minimum degree
    exactly floor((1 - 1/r) n) and no K_{r+1}.
    """
    if r < 1:
        raise InputError("r must be positive")
    t0 = time.perf_counter()
    params = {"n": n, "r": r}
    bad: list[str] = []
    if n >= r:
        sizes = [n // r + (1 if i < n % r else 0) for i in range(r)]
        turan = complete_multipartite(sizes)
        boundary_ok = (min(turan.degrees()) == (r - 1) * n // r
                       and (n > NAIVE_CLIQUE_MAX_N or naive_count_cliques(turan, r + 1) == 0))
        params["boundary_witness"] = "ok" if boundary_ok else "FAILED"
        if not boundary_ok:
            bad.append(serialize_graph6(turan))
    if n <= EXHAUSTIVE_MAX_N:
        cliques = _clique_masks(n, r + 1)
        checked = hyp = 0
        for masks in _labeled_chunks(n):
            checked += len(masks)
            if n == 0:
                continue
            sel = r * _min_degree_vec(masks, n) > (r - 1) * n
            hyp += int(sel.sum())
            miss = sel & ~_contains_any(masks, cliques)
            bad.extend(serialize_graph6(_mask_to_graph(n, int(m))) for m in masks[miss])
        params.update(mode="exhaustive", hypothesis_graphs=hyp)
        return OracleReport("zarankiewicz", checked, bad, time.perf_counter() - t0, params)
    if n > SAMPLED_MAX_N:
        raise CapacityError(f"verify_zarankiewicz_small: n={n} exceeds cap {SAMPLED_MAX_N}")
    rng = np.random.default_rng(seed)
    hyp = 0
    for _ in range(samples):
        g = random_graph(n, rng.uniform(1 - 1 / r, 1.0), rng)
        if r * min(g.degrees()) <= (r - 1) * n:
            continue
        hyp += 1
        if naive_count_cliques(g, r + 1) == 0:
            bad.append(serialize_graph6(g))
    params.update(mode="sampled", seed=seed, hypothesis_graphs=hyp)
    return OracleReport("zarankiewicz", samples, bad, time.perf_counter() - t0, params)


def kst_corpus(n: int, count: int, rng) -> list[Graph]:
    """Random graphs over a spread of densities plus a few structured ones."""
    out = [complete_multipartite([n // 2, n - n // 2]), build_graph(n, [])]
    if n >= 3:
        out.append(build_graph(n, [(i, (i + 1) % n) for i in range(n)]))
    out.append(build_graph(n, [(0, i) for i in range(1, n)]))
    while len(out) < count:
        out.append(random_graph(n, rng.uniform(0.05, 0.7), rng))
    return out[:count]


def verify_kst_small(n: int, t: int = 2, s: int = 2, samples: int = 200,
                     seed: int = 0) -> OracleReport:
    """Cross-check find_kts against naive search, and the KST edge bound.

    A counterexample is a graph where the two searches disagree, or a graph
    above the bound with no K_{t,s}.
    """
    if n > KST_MAX_N:
        raise CapacityError(f"verify_kst_small: n={n} exceeds cap {KST_MAX_N}")
    if not 1 <= t <= s:
        raise InputError("need 1 <= t <= s")
    t0 = time.perf_counter()
    rng = np.random.default_rng(seed)
    kts = complete_multipartite([t, s])
    bound = kst_bound(n, t, s)
    bad, above = [], 0
    for g in kst_corpus(n, samples, rng):
        fast = find_kts(g, t, s)
        if fast is not None and not fast.validate(kts, g):
            bad.append(serialize_graph6(g))
            continue
        slow = naive_find_subgraph(g, kts)
        if (fast is None) != (slow is None):
            bad.append(serialize_graph6(g))
            continue
        if g.num_edges > bound:
            above += 1
            if slow is None:
                bad.append(serialize_graph6(g))
    params = {"n": n, "t": t, "s": s, "seed": seed, "above_bound": above,
              "bound": f"{bound:.3f}"}
    return OracleReport("kst", samples, bad, time.perf_counter() - t0, params)


def verify_census_crosscheck(n: int, k: int = 3, samples: int = 200,
                             seed: int = 0) -> OracleReport:
    """Compare clique_census totals with subset enumeration.

    The corpus is ``samples`` random graphs on ``n`` vertices (densities
    spread over [0.1, 0.9]) plus the structured graphs of :func:`kst_corpus`.
    """
    if n > NAIVE_CLIQUE_MAX_N or k > NAIVE_CLIQUE_MAX_K:
        raise CapacityError(f"census cross-check caps: n <= {NAIVE_CLIQUE_MAX_N}, "
                            f"k <= {NAIVE_CLIQUE_MAX_K}")
    t0 = time.perf_counter()
    rng = np.random.default_rng(seed)
    corpus = kst_corpus(n, 4, rng) + [random_graph(n, rng.uniform(0.1, 0.9), rng)
                                      for _ in range(samples)]
    bad = [serialize_graph6(g) for g in corpus
           if clique_census(g, k).total != naive_count_cliques(g, k)]
    return OracleReport("census-crosscheck", len(corpus), bad, time.perf_counter() - t0,
                        {"n": n, "k": k, "seed": seed})


# ---------------------------------------------------------- biex oracles

def _forbidden(target: TargetSpec | list[Graph]) -> list[Graph]:
    return list(target.reducts) if isinstance(target, TargetSpec) else list(target)


def _edgeless_answer(n: int, family: list[Graph]) -> int | None:
    # an edgeless member with k vertices forbids everything once n >= k
    for b in family:
        if b.num_edges == 0 and n >= b.n:
            return 0
    return None


def biex_search(n: int, target: TargetSpec | list[Graph]) -> tuple[int, Graph]:
    """ex(n, F) with an extremal witness, by branch and bound over edges.

    Symmetry is broken by relabelling a maximum-degree vertex as 0 with
    neighbours 1..D; for each D (largest first) the remaining pairs are
    decided in lexicographic order under the max-degree-D constraint.  An
    edge is only added if no member of F appears through it (rooted
    backtracking search).  Branches are cut by the number of still-open
    edges, by the residual degree capacity, and globally by the averaging
    bound ex(n) <= n ex(n-1) / (n-2).
    """
    if n > BIEX_MAX_N:
        raise CapacityError(f"biex_exact cap is n <= {BIEX_MAX_N}, got {n}")
    family = _forbidden(target)
    pairs = list(itertools.combinations(range(n), 2))
    quick = _edgeless_answer(n, family)
    if quick is not None:
        return quick, build_graph(n, [])
    family = [b for b in family if b.num_edges and b.n <= n]
    if not family:
        return len(pairs), build_graph(n, pairs)
    prev, prev_witness = biex_search(n - 1, target)
    best_count = prev
    best_adj = list(prev_witness.adj) + [0]
    upper = len(pairs) if n < 3 else min(len(pairs), n * prev // (n - 2))
    if best_count == upper:
        return best_count, Graph._trusted(n, best_adj)

    rooted = [(b, x, y) for b in family for e in b.edges() for x, y in (e, e[::-1])]
    adj = [0] * n

    def creates(u: int, v: int) -> bool:
        adj[u] |= 1 << v
        adj[v] |= 1 << u
        g = Graph._trusted(n, adj)
        hit = any(find_subgraph(g, b, fixed={x: u, y: v}) is not None for b, x, y in rooted)
        adj[u] &= ~(1 << v)
        adj[v] &= ~(1 << u)
        return hit

    class Done(Exception):
        pass

    def rec(open_edges: list[tuple[int, int]], count: int, cap: int) -> None:
        nonlocal best_count, best_adj
        if count > best_count:
            best_count, best_adj = count, list(adj)
            if best_count == upper:
                raise Done
        if count + len(open_edges) <= best_count:
            return
        slack = sum(cap - row.bit_count() for row in adj) // 2
        if count + slack <= best_count:
            return
        (u, v), rest = open_edges[0], open_edges[1:]
        adj[u] |= 1 << v
        adj[v] |= 1 << u
        nxt = [(a, b) for a, b in rest
               if adj[a].bit_count() < cap and adj[b].bit_count() < cap and not creates(a, b)]
        rec(nxt, count + 1, cap)
        adj[u] &= ~(1 << v)
        adj[v] &= ~(1 << u)
        rec(rest, count, cap)

    try:
        for cap in range(n - 1, 0, -1):
            if n * cap // 2 <= best_count:
                break
            adj[:] = [0] * n
            star_ok = True
            for j in range(1, cap + 1):
                if creates(0, j):
                    star_ok = False
                    break
                adj[0] |= 1 << j
                adj[j] |= 1 << 0
            if not star_ok:
                continue
            open_edges = [(a, b) for a, b in pairs if a > 0 and not creates(a, b)]
            rec(open_edges, cap, cap)
    except Done:
        pass
    return best_count, Graph._trusted(n, best_adj)


def biex_exact(n: int, target: TargetSpec | list[Graph]) -> int:
    """Exact biex(n, H) = ex(n, F) for n <= 8."""
    return biex_search(n, target)[0]


def _copy_masks(n: int, b: Graph) -> set[int]:
    idx = _pair_index(n)
    out = set()
    bedges = b.edges()
    for image in itertools.permutations(range(n), b.n):
        m = 0
        for x, y in bedges:
            p = (image[x], image[y]) if image[x] < image[y] else (image[y], image[x])
            m |= 1 << idx[p]
        out.add(m)
    return out


def biex_enumerate(n: int, target: TargetSpec | list[Graph]) -> int:
    """ex(n, F) by scanning all 2^C(n,2) labeled graphs (independent path)."""
    if n > BIEX_ENUM_MAX_N:
        raise CapacityError(f"biex_enumerate cap is n <= {BIEX_ENUM_MAX_N}, got {n}")
    family = [b for b in _forbidden(target) if b.n <= n]
    patterns = sorted(set().union(*(_copy_masks(n, b) for b in family))) if family else []
    best = 0
    for masks in _labeled_chunks(n):
        free = ~_contains_any(masks, patterns) if patterns else np.ones(masks.shape, bool)
        if free.any():
            best = max(best, int(np.bitwise_count(masks[free]).max()))
    return best
