"""Extremal constructions and two-sided bounds on biex(n, H).

* :func:`turan_graph` -- complete balanced r-partite graph.
* :func:`aes_extremal` -- E_r(n): r-2 dominating independent sets plus a
  blow-up of C5; (1 - 3/(3r-1)) n-regular, K_{r+1}-free, chromatic number r+1.
* :func:`modified_extremal` -- E'_{r,t}(n): E_r(n) with the C5 blow-up sets
  enlarged and filled with a K_{t,t}-free gadget.
* :func:`lower_bound_graph` -- Turan graph with one part rewired to a dense
  F-free graph.
* :func:`biex_bounds` -- exact / KST upper / constructive lower bounds.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .cliques import find_blowup, find_kts, find_subgraph, kst_bound
from .errors import ConstructionError, InputError, SearchBudgetExceeded
from .graph import (Graph, TargetSpec, build_graph, complete_multipartite,
                    induced, iter_bits, min_degree, popcount, proper_colourings,
                    colour_classes)
from .io import serialize_graph6
from . import oracle

EXACT_BIEX_CAP = 7


@dataclass(frozen=True)
class Construction:
    """A generated graph with its named vertex blocks and bookkeeping."""

    graph: Graph
    blocks: dict[str, int] = field(default_factory=dict)
    info: dict = field(default_factory=dict)


@dataclass(frozen=True)
class ExtremalParams:
    r: int
    n: int
    t: int = 2
    s: int = 2
    c: Fraction | float = Fraction(1, 10)

    def __post_init__(self):
        if self.r < 2:
            raise InputError(f"r must be at least 2, got {self.r}")
        if not 1 <= self.t <= self.s:
            raise InputError(f"need 1 <= t <= s, got t={self.t}, s={self.s}")
        if self.c <= 0:
            raise InputError("c must be positive")
        if self.n < 3 * self.r - 1:
            raise InputError(f"n must be at least 3r-1 = {3 * self.r - 1}")


@dataclass(frozen=True)
class BiexBounds:
    lower: int
    upper: int
    exact: int | None = None

    def __post_init__(self):
        if self.lower > self.upper:
            raise ValueError(f"lower bound {self.lower} exceeds upper bound {self.upper}")


def balanced_sizes(n: int, r: int) -> list[int]:
    return [n // r + (1 if i < n % r else 0) for i in range(r)]


def turan_graph(n: int, r: int) -> Graph:
    if r < 1 or n < r:
        raise InputError(f"turan_graph needs n >= r >= 1, got n={n}, r={r}")
    return complete_multipartite(balanced_sizes(n, r))


def _assemble(x_sizes: list[int], y_sizes: list[int],
              y_inner: list[Graph | None]) -> Construction:
    # X blocks first, then Y_1..Y_5; each X block is joined to everything
    # outside itself, Y_i ~ Y_{i+-1 mod 5}, and Y_i's interior copies y_inner[i]
    sizes = list(x_sizes) + list(y_sizes)
    n = sum(sizes)
    starts = np.cumsum([0] + sizes).tolist()
    masks = [((1 << sz) - 1) << st for sz, st in zip(sizes, starts)]
    nx = len(x_sizes)
    adj = [0] * n
    full = (1 << n) - 1
    for i, m in enumerate(masks):
        if i < nx:
            row = full & ~m
        else:
            j = i - nx
            row = masks[nx + (j + 1) % 5] | masks[nx + (j - 1) % 5]
            for xm in masks[:nx]:
                row |= xm
        for v in iter_bits(m):
            adj[v] = row
    for j, inner in enumerate(y_inner):
        if inner is None:
            continue
        base = starts[nx + j]
        for a, b in inner.edges():
            adj[base + a] |= 1 << (base + b)
            adj[base + b] |= 1 << (base + a)
    blocks = {f"X{i + 1}": masks[i] for i in range(nx)}
    blocks.update({f"Y{j + 1}": masks[nx + j] for j in range(5)})
    return Construction(Graph(n, tuple(adj)), blocks)


def aes_extremal_construction(n: int, r: int) -> Construction:
    if r < 2:
        raise InputError(f"r must be at least 2, got {r}")
    if n <= 0 or n % (3 * r - 1):
        raise InputError(f"aes_extremal needs 3r-1 = {3 * r - 1} to divide n = {n}")
    k = n // (3 * r - 1)
    return _assemble([3 * k] * (r - 2), [k] * 5, [None] * 5)


def aes_extremal(n: int, r: int) -> Graph:
    """E_r(n); requires (3r - 1) | n so that the degree identity is exact."""
    return aes_extremal_construction(n, r).graph


# ------------------------------------------------------------ the gadget

def _primes_from(start: int):
    q = max(2, start)
    while True:
        if all(q % d for d in range(2, math.isqrt(q) + 1)):
            yield q
        q += 1


def polarity_graph(q: int) -> Graph:
    """Erdos-Renyi polarity graph over GF(q), q prime: C4-free on q^2+q+1 vertices."""
    pts = []
    for a in range(q):
        for b in range(q):
            pts.append((1, a, b))
    for b in range(q):
        pts.append((0, 1, b))
    pts.append((0, 0, 1))
    edges = [(i, j) for i in range(len(pts)) for j in range(i + 1, len(pts))
             if sum(x * y for x, y in zip(pts[i], pts[j])) % q == 0]
    return build_graph(len(pts), edges)


def trim_to(g: Graph, m: int) -> Graph:
    """Remove minimum-degree vertices (lowest index first) until ``m`` remain."""
    alive = g.vertices
    while popcount(alive) > m:
        v = min(iter_bits(alive), key=lambda u: (popcount(g.adj[u] & alive), u))
        alive &= ~(1 << v)
    return induced(g, alive)[0]


def ktt_guard(m: int, t: int) -> int:
    """Largest minimum degree the KST bound allows in a K_{t,t}-free m-vertex graph."""
    if m < 2 * t:
        return m - 1
    return min(m - 1, int(2 * kst_bound(m, t, t) / m + 1e-9))


def _greedy_free(m: int, forbidden: list[Graph], rng) -> Graph:
    # random greedy process: add pairs in random order unless a forbidden
    # graph would appear through the new edge
    pairs = [(a, b) for a in range(m) for b in range(a + 1, m)]
    order = rng.permutation(len(pairs))
    rooted = [(f, x, y) for f in forbidden for e in f.edges() for x, y in (e, e[::-1])]
    adj = [0] * m
    for idx in order:
        u, v = pairs[idx]
        adj[u] |= 1 << v
        adj[v] |= 1 << u
        g = Graph._trusted(m, adj)
        if any(find_subgraph(g, f, fixed={x: u, y: v}) is not None for f, x, y in rooted):
            adj[u] &= ~(1 << v)
            adj[v] &= ~(1 << u)
    return Graph._trusted(m, adj)


def _altered_random(m: int, t: int, rng) -> Graph:
    # G(m, p) with p tuned so the expected number of K_{t,t} is about m/2,
    # then one edge removed from each surviving copy
    copies = math.comb(m, t) * math.comb(m - t, t) / 2
    p = min(1.0, (m / (2 * copies)) ** (1 / (t * t))) if copies else 1.0
    adj = [0] * m
    for a in range(m):
        for b in range(a + 1, m):
            if rng.random() < p:
                adj[a] |= 1 << b
                adj[b] |= 1 << a
    while True:
        g = Graph._trusted(m, adj)
        hit = find_kts(g, t, t)
        if hit is None:
            return g
        a, b = hit.assignment[0], hit.assignment[t]
        adj[a] &= ~(1 << b)
        adj[b] &= ~(1 << a)


def ktt_free_gadget(m: int, t: int, min_deg: int, seed: int = 0,
                    attempts: int = 20) -> Graph:
    """A K_{t,t}-free graph on ``m`` vertices with minimum degree >= ``min_deg``.

    Tries, in order: for t = 2 a trimmed polarity graph of prime order; then
    random alteration and the random greedy K_{t,t}-free process, each with
    fresh randomness per attempt.  Every candidate is validated; failure is
    reported with :class:`ConstructionError`.
    """
    if t < 2:
        raise InputError("gadget needs t >= 2")
    if m < 1:
        raise InputError("gadget needs at least one vertex")
    if min_deg <= 0:
        return build_graph(m, [])
    guard = ktt_guard(m, t)
    if min_deg > guard:
        raise ConstructionError(
            f"no K_{{{t},{t}}}-free graph on {m} vertices has minimum degree {min_deg} "
            f"(KST guard allows at most {guard})")

    def ok(g: Graph) -> bool:
        return min_degree(g) >= min_deg and find_kts(g, t, t) is None

    if t == 2:
        for q in _primes_from(2):
            if q * q + q + 1 >= m:
                cand = trim_to(polarity_graph(q), m)
                if ok(cand):
                    return cand
                break
    rng = np.random.default_rng(seed)
    kt = complete_multipartite([t, t])
    for _ in range(attempts):
        for cand in (_altered_random(m, t, rng), _greedy_free(m, [kt], rng)):
            if ok(cand):
                return cand
    raise ConstructionError(
        f"could not build a K_{{{t},{t}}}-free graph on {m} vertices with minimum degree "
        f"{min_deg} in {attempts} attempts (seed {seed})")


# ------------------------------------------------------ E'_{r,t}(n)

def modified_extremal(p: ExtremalParams, seed: int = 0, validate: bool = True,
                      budget: int = 200_000) -> Construction:
    """E'_{r,t}(n): enlarged C5 blow-up sets, each filled with a K_{t,t}-free gadget.

    Each Y set gets ``n/(3r-1) + (r-2) c n^(1-2/t)`` vertices and each X set
    ``3n/(3r-1) - 5 c n^(1-2/t)`` (both floored, the remainder goes to X_1, or
    is spread over the Y sets when r = 2).  The gadget has minimum degree
    ``ceil((3r-1) c n^(1-2/t))``.  ``info`` reports the achieved minimum
    degree and, when ``validate`` is set, whether K_{r+1}(2t) was excluded
    by a search within ``budget`` nodes (``None`` if the budget ran out).
    """
    r, n, t = p.r, p.n, p.t
    c = float(p.c)
    growth = c * n ** (1 - 2 / t)
    y = math.floor(n / (3 * r - 1) + (r - 2) * growth)
    x = math.floor(3 * n / (3 * r - 1) - 5 * growth)
    x_sizes = [x] * (r - 2)
    y_sizes = [y] * 5
    rem = n - 5 * y - sum(x_sizes)
    if r >= 3:
        x_sizes[0] += rem
    else:
        for j in range(rem):
            y_sizes[j % 5] += 1
    if min(y_sizes) < 1 or (x_sizes and min(x_sizes) < 1):
        raise InputError(f"parameters leave an empty block: X={x_sizes}, Y={y_sizes}")
    gadget_deg = math.ceil((3 * r - 1) * growth - 1e-12)
    gadgets: dict[int, Graph] = {}
    for j, size in enumerate(y_sizes):
        if size not in gadgets:
            gadgets[size] = ktt_free_gadget(size, t, gadget_deg, seed=seed + j)
    built = _assemble(x_sizes, y_sizes, [gadgets[sz] for sz in y_sizes])
    g = built.graph
    info = {"x_sizes": x_sizes, "y_sizes": y_sizes, "gadget_min_degree": gadget_deg,
            "min_degree": min_degree(g), "seed": seed,
            "degree_target": (3 * r - 4) / (3 * r - 1) * n + 5 * growth}
    if validate:
        if (r + 1) * 2 * t > 24:
            info["blowup_free"] = None
        else:
            try:
                info["blowup_free"] = find_blowup(g, r + 1, 2 * t, budget=budget) is None
            except SearchBudgetExceeded:
                info["blowup_free"] = None
    return Construction(g, built.blocks, info)


# ------------------------------------------------ biex lower-bound graph

def _family_free(g: Graph, family) -> bool:
    return all(find_subgraph(g, b) is None for b in family)


def f_free_witness(n: int, target: TargetSpec, seed: int = 0, tries: int = 3) -> Graph:
    """Densest F-free graph on ``n`` vertices available: exact for small n,
    best of a few random greedy F-free processes otherwise."""
    if n <= EXACT_BIEX_CAP:
        return oracle.biex_search(n, target)[1]
    family = [b for b in target.reducts if b.n <= n]
    if any(b.num_edges == 0 for b in family):
        return build_graph(n, [])
    rng = np.random.default_rng(seed)
    best = None
    for _ in range(tries):
        g = _greedy_free(n, family, rng)
        if best is None or g.num_edges > best.num_edges:
            best = g
    return best


def lower_bound_graph(n: int, r: int, target: TargetSpec, witness: Graph | None = None,
                      seed: int = 0) -> Construction:
    """Complete balanced r-partite graph with its first part rewired to E'.

    E' is the ceil(n/r)-vertex subgraph of an F-free witness kept by
    repeatedly deleting a minimum-degree vertex.  Pass ``witness`` to supply
    the F-free graph E explicitly; otherwise :func:`f_free_witness` is used.
    """
    if r < 2 or n < r:
        raise InputError(f"lower_bound_graph needs n >= r >= 2, got n={n}, r={r}")
    sizes = balanced_sizes(n, r)
    part = sizes[0]
    if witness is None:
        witness = f_free_witness(n, target, seed)
    elif not _family_free(witness, target.reducts):
        raise InputError("supplied witness contains a member of the reduct family")
    inner = trim_to(witness, part) if witness.n >= part else \
        Graph._trusted(part, list(witness.adj) + [0] * (part - witness.n))
    base = complete_multipartite(sizes)
    adj = list(base.adj)
    for a, b in inner.edges():
        adj[a] |= 1 << b
        adj[b] |= 1 << a
    g = Graph(n, tuple(adj))
    starts = np.cumsum([0] + sizes).tolist()
    blocks = {f"V{i + 1}": ((1 << sz) - 1) << st for i, (sz, st) in enumerate(zip(sizes, starts))}
    info = {"inner_edges": inner.num_edges, "witness_edges": witness.num_edges,
            "witness_n": witness.n, "seed": seed,
            "inner_graph6": serialize_graph6(inner)}
    return Construction(g, blocks, info)


# --------------------------------------------------------------- bounds

def _kst_upper(n: int, family) -> int:
    best = math.comb(n, 2)
    for b in family:
        if b.num_edges == 0:
            if n >= b.n:
                return 0
            continue
        for colour in proper_colourings(b, 2):
            a, c = sorted(popcount(m) for m in colour_classes(colour, 2))
            if n < a + c:
                continue
            best = min(best, int(kst_bound(n, a, c) + 1e-9))
    return best


@lru_cache(maxsize=256)
def biex_bounds(n: int, target: TargetSpec, exact_cap: int = EXACT_BIEX_CAP,
                seed: int = 0) -> BiexBounds:
    """Two-sided bounds on biex(n, H).

    Upper: the exact value when n <= ``exact_cap``, else the KST bound for
    the best K_{a,b} containing some member of F.  Lower: the edge count of
    an explicit F-free graph.
    """
    if n <= 1:
        return BiexBounds(0, 0, 0)
    if n <= exact_cap:
        exact, _ = oracle.biex_search(n, target)
        return BiexBounds(exact, exact, exact)
    upper = _kst_upper(n, target.reducts)
    lower = min(upper, f_free_witness(n, target, seed).num_edges)
    return BiexBounds(lower, upper)
