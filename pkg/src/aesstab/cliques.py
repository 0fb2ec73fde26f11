"""Clique census, blow-up / subgraph / K_{t,s} search, and counting constants.

Cost model for :func:`clique_census`: every clique of order < k is visited
once as an internal node of the enumeration tree and every K_k is touched
once at a leaf, each visit costing one big-int ``&`` over n bits.  With a
degeneracy ordering the tree below a vertex only sees its forward
neighbourhood, of size at most the degeneracy.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Sequence

from .errors import CapacityError, InputError, SearchBudgetExceeded
from .graph import Graph, iter_bits, popcount

CENSUS_MAX_K = 8
CENSUS_MAX_N = 400
BLOWUP_CAP = 24
SUBGRAPH_CAP = 16


@dataclass(frozen=True)
class CliqueCensus:
    """Counts of K_k copies: in total, through each vertex, through each edge."""

    k: int
    total: int
    per_vertex: tuple[int, ...]
    per_edge: dict[tuple[int, int], int]

    def edge(self, u: int, v: int) -> int:
        return self.per_edge.get((u, v) if u < v else (v, u), 0)

    def merge(self, other: "CliqueCensus") -> "CliqueCensus":
        """Combine censuses over disjoint root sets of the same graph."""
        if other.k != self.k or len(other.per_vertex) != len(self.per_vertex):
            raise InputError("can only merge censuses of the same graph and order")
        per_edge = dict(self.per_edge)
        for e, c in other.per_edge.items():
            per_edge[e] = per_edge.get(e, 0) + c
        return CliqueCensus(self.k, self.total + other.total,
                            tuple(a + b for a, b in zip(self.per_vertex, other.per_vertex)),
                            per_edge)


@dataclass(frozen=True)
class Embedding:
    """``assignment[x]`` is the host vertex that target vertex ``x`` maps to."""

    assignment: tuple[int, ...]

    def validate(self, h: Graph, g: Graph) -> bool:
        a = self.assignment
        if len(a) != h.n or len(set(a)) != len(a):
            return False
        if any(not 0 <= x < g.n for x in a):
            return False
        return all(g.has_edge(a[u], a[v]) for u, v in h.edges())

    def image(self) -> frozenset[int]:
        return frozenset(self.assignment)


def degeneracy_order(g: Graph) -> list[int]:
    """Repeatedly remove a minimum-degree vertex (lowest index on ties)."""
    alive = g.vertices
    order = []
    for _ in range(g.n):
        v = min(iter_bits(alive), key=lambda u: (popcount(g.adj[u] & alive), u))
        order.append(v)
        alive &= ~(1 << v)
    return order


def clique_census(g: Graph, k: int, roots: int | None = None) -> CliqueCensus:
    """Exact K_k census over bitset intersections.

    ``roots`` restricts the count to cliques whose earliest vertex in the
    degeneracy order lies in that mask; censuses over a partition of the
    vertex set merge (:meth:`CliqueCensus.merge`) into the full census.
    """
    if k < 1:
        raise InputError("clique order must be at least 1")
    if k > CENSUS_MAX_K or g.n > CENSUS_MAX_N:
        raise CapacityError(
            f"clique_census caps are k <= {CENSUS_MAX_K}, n <= {CENSUS_MAX_N}; "
            f"got k={k}, n={g.n}")
    if roots is None:
        roots = g.vertices
    per_vertex = [0] * g.n
    per_edge = {e: 0 for e in g.edges()}
    if k == 1:
        for v in iter_bits(roots):
            per_vertex[v] = 1
        return CliqueCensus(1, popcount(roots), tuple(per_vertex), {e: 0 for e in per_edge})

    order = degeneracy_order(g)
    fwd = [0] * g.n
    later = g.vertices
    for v in order:
        later &= ~(1 << v)
        fwd[v] = g.adj[v] & later
    total = 0
    chosen: list[int] = []

    def key(a: int, b: int) -> tuple[int, int]:
        return (a, b) if a < b else (b, a)

    def rec(cand: int) -> None:
        nonlocal total
        depth = len(chosen)
        if depth == k - 1:
            cnt = popcount(cand)
            if not cnt:
                return
            total += cnt
            for i, a in enumerate(chosen):
                per_vertex[a] += cnt
                for b in chosen[i + 1:]:
                    per_edge[key(a, b)] += cnt
            for w in iter_bits(cand):
                per_vertex[w] += 1
                for a in chosen:
                    per_edge[key(a, w)] += 1
            return
        need = k - depth
        for w in iter_bits(cand):
            nxt = cand & fwd[w]
            if popcount(nxt) < need - 1:
                continue
            chosen.append(w)
            rec(nxt)
            chosen.pop()

    for v in order:
        if roots >> v & 1:
            chosen.append(v)
            rec(fwd[v])
            chosen.pop()
    return CliqueCensus(k, total, tuple(per_vertex), per_edge)


def edges_in_many_cliques(g: Graph, k: int, floor: int,
                          census: CliqueCensus | None = None) -> set[tuple[int, int]]:
    """Edges lying in at least ``floor`` copies of K_k."""
    if census is None:
        census = clique_census(g, k)
    return {e for e, c in census.per_edge.items() if c >= floor}


class _Budget:
    def __init__(self, limit: int | None):
        self.limit = limit
        self.used = 0

    def tick(self) -> None:
        self.used += 1
        if self.limit is not None and self.used > self.limit:
            raise SearchBudgetExceeded(f"search budget of {self.limit} nodes exhausted")


def find_blowup(g: Graph, r: int, s: int, budget: int | None = None) -> Embedding | None:
    """Find one copy of K_r(s), or ``None`` when none exists.

    Parts are chosen one at a time as s-subsets of the running common
    neighbourhood, and the search recurses on what the chosen part leaves in
    common.  Parts are ordered by their smallest vertex.  Raises
    :class:`SearchBudgetExceeded` if ``budget`` nodes are spent without a
    definite answer.  Target vertex ``i*s + j`` is vertex ``j`` of part ``i``
    in :func:`~aesstab.graph.complete_multipartite` ``([s] * r)``.
    """
    if r < 1 or s < 1:
        raise InputError("r and s must be positive")
    if r * s > BLOWUP_CAP:
        raise CapacityError(f"find_blowup cap is r*s <= {BLOWUP_CAP}, got {r * s}")
    if r * s > g.n:
        return None
    tick = _Budget(budget).tick
    need_deg = s * (r - 1)
    start_pool = 0
    for v in range(g.n):
        if g.degree(v) >= need_deg:
            start_pool |= 1 << v
    parts: list[list[int]] = []

    def pick_part(pool: int, remaining: int, prev_min: int):
        # yields (part, common neighbourhood of the part inside pool); only the
        # smallest vertex of a part is constrained by prev_min
        after = s * (remaining - 1)
        for v in iter_bits(pool):
            if v <= prev_min:
                continue
            nxt = pool & g.adj[v]
            tick()
            if popcount(nxt) < after:
                continue
            rest = [u for u in iter_bits(pool) if u > v]
            yield from extend([v], rest, nxt, after)

    def extend(part: list[int], rest: list[int], common: int, after: int):
        if len(part) == s:
            yield list(part), common
            return
        for j, u in enumerate(rest):
            if len(rest) - j < s - len(part):
                return
            nxt = common & g.adj[u]
            tick()
            if popcount(nxt) < after:
                continue
            part.append(u)
            yield from extend(part, rest[j + 1:], nxt, after)
            part.pop()

    def rec_parts(pool: int, remaining: int, prev_min: int) -> bool:
        if remaining == 0:
            return True
        for part, common in pick_part(pool, remaining, prev_min):
            parts.append(part)
            if rec_parts(common, remaining - 1, part[0]):
                return True
            parts.pop()
        return False

    if rec_parts(start_pool, r, -1):
        return Embedding(tuple(v for part in parts for v in part))
    return None


def find_subgraph(g: Graph, h: Graph, budget: int | None = None,
                  order: Sequence[int] | None = None,
                  fixed: dict[int, int] | None = None) -> Embedding | None:
    """Backtracking search for a (not necessarily induced) copy of ``h`` in ``g``.

    Target vertices are placed so that each one has as many already-placed
    neighbours as possible, and candidates are the common host
    neighbourhood of those images, filtered by degree.  ``order`` is a
    preferred order for host vertices when a target vertex has no placed
    neighbour; ``fixed`` pre-assigns some target vertices.
    """
    if h.n > SUBGRAPH_CAP:
        raise CapacityError(f"find_subgraph cap is v(h) <= {SUBGRAPH_CAP}, got {h.n}")
    if h.n > g.n or h.num_edges > g.num_edges:
        return None
    tick = _Budget(budget).tick
    hdeg, gdeg = h.degrees(), g.degrees()
    rank = list(range(g.n))
    if order is not None:
        for i, v in enumerate(order):
            rank[v] = i - g.n
    image = [-1] * h.n
    used = 0
    fixed = fixed or {}
    for x, y in fixed.items():
        if image[x] >= 0 or used >> y & 1:
            raise InputError("fixed assignment is not injective")
        image[x] = y
        used |= 1 << y
    for x, y in fixed.items():
        for z in iter_bits(h.adj[x]):
            if image[z] >= 0 and not g.has_edge(y, image[z]):
                return None

    placed = sum(1 << x for x in fixed)
    seq = []
    while popcount(placed) < h.n:
        best = max((x for x in range(h.n) if not placed >> x & 1),
                   key=lambda x: (popcount(h.adj[x] & placed), hdeg[x], -x))
        seq.append(best)
        placed |= 1 << best

    def rec(i: int) -> bool:
        nonlocal used
        if i == len(seq):
            return True
        x = seq[i]
        cand = g.vertices & ~used
        for z in iter_bits(h.adj[x]):
            if image[z] >= 0:
                cand &= g.adj[image[z]]
        ys = [y for y in iter_bits(cand) if gdeg[y] >= hdeg[x]]
        if order is not None:
            ys.sort(key=lambda y: rank[y])
        for y in ys:
            tick()
            image[x] = y
            used |= 1 << y
            if rec(i + 1):
                return True
            used &= ~(1 << y)
            image[x] = -1
        return False

    if rec(0):
        return Embedding(tuple(image))
    return None


def find_kts(g: Graph, t: int, s: int) -> Embedding | None:
    """Find K_{t,s}: a t-set whose common neighbourhood has at least s vertices.

    The embedding follows ``complete_multipartite([t, s])``: target vertices
    ``0..t-1`` form the small side.
    """
    if not 1 <= t <= s:
        raise InputError(f"need 1 <= t <= s, got t={t}, s={s}")
    cands = sorted((v for v in range(g.n) if g.degree(v) >= s),
                   key=lambda v: (-g.degree(v), v))
    pos = {v: i for i, v in enumerate(cands)}
    chosen: list[int] = []

    def rec(common: int, start: int) -> int | None:
        if len(chosen) == t:
            return common
        nxt = []
        for v in cands[start:]:
            c = common & g.adj[v]
            if popcount(c) >= s:
                nxt.append((-popcount(c), v, c))
        nxt.sort()
        for _, v, c in nxt:
            chosen.append(v)
            got = rec(c, pos[v] + 1)
            if got is not None:
                return got
            chosen.pop()
        return None

    common = rec(g.vertices, 0)
    if common is None:
        return None
    side = list(iter_bits(common))[:s]
    return Embedding(tuple(chosen) + tuple(side))


def erdos_delta(r: int, s: int, eps) -> Fraction:
    """Exact rational value of the blow-up counting constant delta_{r,s}(eps).

    Base: delta_{1,s}(e) = e^s / (2^s s!).  Step: the binomial
    C(delta_{r-1,s}(e/2)|D|, s) with |D| = e n/2 is replaced by the product
    bound (x/2)^s / s!, giving
    delta_{r,s}(e) = delta_{r-1,s}(e/2) (delta_{r-1,s}(e/2) e/2)^s / (r 2^s s!).
    """
    if r < 1 or s < 1:
        raise InputError("r and s must be positive")
    eps = Fraction(eps)
    if not 0 < eps <= 1:
        raise InputError(f"eps must lie in (0, 1], got {eps}")
    denom = 2 ** s * factorial(s)
    if r == 1:
        return eps ** s / denom
    prev = erdos_delta(r - 1, s, eps / 2)
    return prev * (prev * eps / 2) ** s / (r * denom)



def kst_bound(n: int, t: int, s: int) -> float:
    """Kovari-Sos-Turan: a K_{t,s}-free n-vertex graph has at most this many edges.

    ``(1/2) ((s-1)^(1/t) (n-t+1) n^(1-1/t) + (t-1) n)``
    """
    return 0.5 * ((s - 1) ** (1 / t) * (n - t + 1) * n ** (1 - 1 / t) + (t - 1) * n)
