"""Bitset graphs, degree arithmetic, colourings and target-graph analysis.

Vertex sets are plain Python ints used as bit vectors: bit ``v`` is set when
vertex ``v`` belongs to the set.  Adjacency rows are stored the same way, so
codegrees and common neighbourhoods are a single ``&`` plus ``bit_count``.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

from .errors import CapacityError, InputError

CHROMATIC_CAP = 24
TARGET_CAP = 16


def iter_bits(mask: int) -> Iterator[int]:
    """Yield the indices of the set bits of ``mask`` in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


def popcount(mask: int) -> int:
    return mask.bit_count()


@dataclass(frozen=True)
class Graph:
    """Undirected simple graph on vertices ``0..n-1`` with bitset rows.

    Instances are immutable.  Direct construction checks symmetry,
    loop-freeness and range; the builders in this module produce valid rows
    by construction and skip the check.
    """

    n: int
    adj: tuple[int, ...]

    def __post_init__(self):
        if self.n < 0:
            raise InputError(f"negative vertex count {self.n}")
        if len(self.adj) != self.n:
            raise InputError(f"expected {self.n} adjacency rows, got {len(self.adj)}")
        full = (1 << self.n) - 1
        for v, row in enumerate(self.adj):
            if row & ~full:
                raise InputError(f"row {v} has bits outside [0, {self.n})")
            if row >> v & 1:
                raise InputError(f"loop at vertex {v}")
            for u in iter_bits(row):
                if not self.adj[u] >> v & 1:
                    raise InputError(f"asymmetric adjacency between {u} and {v}")

    @classmethod
    def _trusted(cls, n: int, adj: Sequence[int]) -> "Graph":
        # skips the O(m) validation for rows built by this module
        g = object.__new__(cls)
        object.__setattr__(g, "n", n)
        object.__setattr__(g, "adj", tuple(adj))
        return g

    @property
    def vertices(self) -> int:
        """Mask of all vertices."""
        return (1 << self.n) - 1

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def degrees(self) -> list[int]:
        return [row.bit_count() for row in self.adj]

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def neighbours(self, v: int) -> list[int]:
        return list(iter_bits(self.adj[v]))

    @property
    def num_edges(self) -> int:
        return sum(self.degrees()) // 2

    def edges(self) -> list[tuple[int, int]]:
        """Edges as ``(u, v)`` pairs with ``u < v``, lexicographically sorted."""
        out = []
        for u, row in enumerate(self.adj):
            out.extend((u, v) for v in iter_bits(row >> (u + 1) << (u + 1)))
        return out

    def __repr__(self):
        return f"Graph(n={self.n}, m={self.num_edges})"


def _check_vertex(g: Graph, v: int) -> None:
    if not 0 <= v < g.n:
        raise InputError(f"vertex {v} out of range [0, {g.n})")


def build_graph(n: int, edges: Iterable[tuple[int, int]]) -> Graph:
    """Build a graph from an edge list; duplicate edges are collapsed."""
    if n < 0:
        raise InputError(f"negative vertex count {n}")
    adj = [0] * n
    for u, v in edges:
        if not (0 <= u < n and 0 <= v < n):
            raise InputError(f"edge ({u}, {v}) has an endpoint outside [0, {n})")
        if u == v:
            raise InputError(f"loop at vertex {u}")
        adj[u] |= 1 << v
        adj[v] |= 1 << u
    return Graph._trusted(n, adj)


def empty_graph(n: int) -> Graph:
    return Graph._trusted(n, [0] * n)


def complete_graph(n: int) -> Graph:
    full = (1 << n) - 1
    return Graph._trusted(n, [full ^ (1 << v) for v in range(n)])


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise InputError("a cycle needs at least 3 vertices")
    return build_graph(n, [(i, (i + 1) % n) for i in range(n)])


def min_degree(g: Graph) -> int:
    if g.n == 0:
        raise InputError("minimum degree of the empty graph is undefined")
    return min(g.degrees())


def max_degree_in(g: Graph, s: int) -> int:
    """Maximum degree of the induced subgraph ``g[s]`` (0 for empty ``s``)."""
    return max((popcount(g.adj[v] & s) for v in iter_bits(s)), default=0)


def codegree(g: Graph, u: int, v: int) -> int:
    _check_vertex(g, u)
    _check_vertex(g, v)
    if u == v:
        raise InputError("codegree needs two distinct vertices")
    return popcount(g.adj[u] & g.adj[v])


def neighbourhood_graph(g: Graph, v: int) -> Graph:
    """G_v: keep only the edges with both ends in the neighbourhood of ``v``."""
    _check_vertex(g, v)
    nb = g.adj[v]
    return Graph._trusted(g.n, [g.adj[u] & nb if nb >> u & 1 else 0 for u in range(g.n)])


def induced(g: Graph, s: int | Iterable[int]) -> tuple[Graph, dict[int, int]]:
    """Induced subgraph on ``s`` relabelled to ``0..|s|-1`` in ascending order.

    Returns the subgraph and the old->new vertex map.
    """
    if not isinstance(s, int):
        s = mask_of(s)
    if s & ~g.vertices:
        raise InputError("vertex set is not contained in the graph")
    old = list(iter_bits(s))
    relabel = {v: i for i, v in enumerate(old)}
    adj = []
    for v in old:
        row = 0
        for u in iter_bits(g.adj[v] & s):
            row |= 1 << relabel[u]
        adj.append(row)
    return Graph._trusted(len(old), adj), relabel


def delete_edges(g: Graph, edges: Iterable[tuple[int, int]]) -> Graph:
    adj = list(g.adj)
    for u, v in edges:
        adj[u] &= ~(1 << v)
        adj[v] &= ~(1 << u)
    return Graph._trusted(g.n, adj)


def disjoint_union(*graphs: Graph) -> Graph:
    adj: list[int] = []
    offset = 0
    for h in graphs:
        adj.extend(row << offset for row in h.adj)
        offset += h.n
    return Graph._trusted(offset, adj)


def complete_multipartite(sizes: Sequence[int]) -> Graph:
    """Complete multipartite graph; part ``i`` occupies a contiguous index block."""
    if not sizes:
        raise InputError("need at least one part")
    if any(s < 1 for s in sizes):
        raise InputError(f"part sizes must be positive, got {list(sizes)}")
    n = sum(sizes)
    full = (1 << n) - 1
    adj = []
    start = 0
    for s in sizes:
        block = ((1 << s) - 1) << start
        adj.extend([full & ~block] * s)
        start += s
    return Graph._trusted(n, adj)


def blocks_of(sizes: Sequence[int]) -> list[int]:
    """Vertex masks of the contiguous blocks used by :func:`complete_multipartite`."""
    out, start = [], 0
    for s in sizes:
        out.append(((1 << s) - 1) << start)
        start += s
    return out


# ---------------------------------------------------------------- colouring

def is_proper_colouring(g: Graph, colour: Sequence[int]) -> bool:
    return all(colour[u] != colour[v] for u, v in g.edges())


def greedy_colouring(g: Graph) -> list[int]:
    """Largest-first greedy colouring (an upper bound on the chromatic number)."""
    colour = [-1] * g.n
    for v in sorted(range(g.n), key=lambda v: (-g.degree(v), v)):
        used = {colour[u] for u in iter_bits(g.adj[v])}
        c = 0
        while c in used:
            c += 1
        colour[v] = c
    return colour


def greedy_clique(g: Graph) -> int:
    """Mask of a clique grown greedily from each vertex; the largest is kept."""
    best = 0
    for start in range(g.n):
        clique, cand = 1 << start, g.adj[start]
        while cand:
            v = max(iter_bits(cand), key=lambda u: (popcount(g.adj[u] & cand), -u))
            clique |= 1 << v
            cand &= g.adj[v]
        if popcount(clique) > popcount(best):
            best = clique
    return best


def k_colouring(g: Graph, k: int) -> list[int] | None:
    """A proper colouring with at most ``k`` colours, or ``None``.

    DSATUR-ordered backtracking; colours are tried in increasing order and a
    fresh colour is only ever the next unused one, which removes the k!
    relabelling symmetry.
    """
    if g.n == 0:
        return []
    if k <= 0:
        return None
    colour = [-1] * g.n
    # colour_masks[c] = vertices currently coloured c
    colour_masks = [0] * k
    deg = g.degrees()

    def pick() -> int:
        best, best_key = -1, None
        for v in range(g.n):
            if colour[v] >= 0:
                continue
            sat = sum(1 for c in range(k) if colour_masks[c] & g.adj[v])
            key = (sat, deg[v], -v)
            if best_key is None or key > best_key:
                best, best_key = v, key
        return best

    def solve(done: int, used: int) -> bool:
        if done == g.n:
            return True
        v = pick()
        for c in range(min(used + 1, k)):
            if colour_masks[c] & g.adj[v]:
                continue
            colour[v] = c
            colour_masks[c] |= 1 << v
            if solve(done + 1, max(used, c + 1)):
                return True
            colour_masks[c] &= ~(1 << v)
            colour[v] = -1
        return False

    return colour if solve(0, 0) else None


def twin_quotient(g: Graph) -> tuple[Graph, list[int]]:
    """Merge false twins (vertices with identical neighbourhoods).

    Returns the quotient graph and, for each original vertex, its class index.
    The chromatic number is unchanged: a twin can reuse its partner's colour.
    """
    classes: dict[int, int] = {}
    rep: list[int] = []
    cls = []
    for v in range(g.n):
        row = g.adj[v]
        if row not in classes:
            classes[row] = len(rep)
            rep.append(v)
        cls.append(classes[row])
    q, _ = induced(g, mask_of(rep))
    return q, cls


def chromatic_number(g: Graph) -> int:
    """Exact chromatic number.

    Twins are merged first, so blow-ups of small graphs stay cheap; the cap
    applies to the merged graph.  Between the greedy-clique lower bound and
    the greedy-colouring upper bound, k-colourability is decided exactly.
    """
    if g.n == 0:
        return 0
    q, _ = twin_quotient(g)
    if q.n > CHROMATIC_CAP:
        raise CapacityError(
            f"chromatic_number: {q.n} vertices after twin reduction exceeds cap {CHROMATIC_CAP}")
    lower = popcount(greedy_clique(q))
    upper = max(greedy_colouring(q)) + 1
    for k in range(lower, upper):
        if k_colouring(q, k) is not None:
            return k
    return upper


def colour_classes(colour: Sequence[int], k: int) -> list[int]:
    masks = [0] * k
    for v, c in enumerate(colour):
        masks[c] |= 1 << v
    return masks


def proper_colourings(g: Graph, k: int) -> Iterator[list[int]]:
    """All proper colourings with colours ``0..k-1``, up to renaming colours.

    A colouring is emitted in canonical form: colours first appear in the
    order 0, 1, 2, ... along the vertex order.
    """
    colour = [-1] * g.n
    masks = [0] * k

    def rec(v: int, used: int) -> Iterator[list[int]]:
        if v == g.n:
            yield list(colour)
            return
        for c in range(min(used + 1, k)):
            if masks[c] & g.adj[v]:
                continue
            colour[v] = c
            masks[c] |= 1 << v
            yield from rec(v + 1, max(used, c + 1))
            masks[c] &= ~(1 << v)
        colour[v] = -1

    yield from rec(0, 0)


# -------------------------------------------------------------- isomorphism

def _invariant(g: Graph) -> tuple:
    degs = g.degrees()
    nbr_degs = sorted((degs[v], tuple(sorted(degs[u] for u in iter_bits(g.adj[v]))))
                      for v in range(g.n))
    return (g.n, g.num_edges, tuple(nbr_degs))


def are_isomorphic(a: Graph, b: Graph) -> bool:
    """Exact isomorphism test by degree-refined backtracking (small graphs)."""
    if _invariant(a) != _invariant(b):
        return False
    n = a.n
    da, db = a.degrees(), b.degrees()
    order = sorted(range(n), key=lambda v: (-da[v], v))
    # reorder so each vertex after the first is adjacent to an earlier one if possible
    placed, seq = 0, []
    while len(seq) < n:
        frontier = [v for v in order if not placed >> v & 1 and a.adj[v] & placed]
        v = frontier[0] if frontier else next(v for v in order if not placed >> v & 1)
        seq.append(v)
        placed |= 1 << v
    image = [-1] * n
    used = 0

    def rec(i: int) -> bool:
        nonlocal used
        if i == n:
            return True
        v = seq[i]
        cand = ~used & b.vertices
        for u in iter_bits(a.adj[v]):
            if image[u] >= 0:
                cand &= b.adj[image[u]]
        for w in iter_bits(cand):
            if db[w] != da[v]:
                continue
            # non-edges must map to non-edges too
            ok = all(b.has_edge(w, image[u]) == a.has_edge(v, u)
                     for u in seq[:i])
            if not ok:
                continue
            image[v] = w
            used |= 1 << w
            if rec(i + 1):
                return True
            used &= ~(1 << w)
            image[v] = -1
        return False

    return rec(0)


# ---------------------------------------------------------- target analysis

@dataclass(frozen=True)
class TargetSpec:
    """A target graph H with chi(H), sigma(H) and the two-class reduct family.

    ``colouring`` is a proper chi-colouring minimising the largest class, so
    that H embeds in the balanced blow-up with ``blowup_size`` vertices per
    class.
    """

    h: Graph
    chi: int
    sigma: int
    reducts: tuple[Graph, ...]
    colouring: tuple[int, ...] = field(repr=False)

    @property
    def vH(self) -> int:
        return self.h.n

    @property
    def r(self) -> int:
        """Number of parts the host graph is asked to split into (chi - 1)."""
        return self.chi - 1

    @property
    def blowup_size(self) -> int:
        return max(self.colouring.count(c) for c in range(self.chi))


def analyze_target(h: Graph) -> TargetSpec:
    """Enumerate every proper chi(H)-colouring to get sigma(H) and the reducts.

    Each reduct is H induced on the union of two colour classes of some
    colouring; taking every unordered class pair covers every labelling of
    the colours 1 and 2.  Reducts are de-duplicated up to isomorphism.
    """
    if h.n == 0:
        raise InputError("target graph must have at least one vertex")
    if h.n > TARGET_CAP:
        raise CapacityError(f"analyze_target: {h.n} vertices exceeds cap {TARGET_CAP}")
    chi = chromatic_number(h)
    sigma = h.n
    best_colouring, best_max = None, h.n + 1
    supports: set[int] = set()
    for colour in proper_colourings(h, chi):
        classes = colour_classes(colour, chi)
        sizes = [popcount(c) for c in classes]
        sigma = min(sigma, min(sizes))
        if max(sizes) < best_max:
            best_colouring, best_max = tuple(colour), max(sizes)
        if chi == 1:
            supports.add(classes[0])
        for a, b in itertools.combinations(range(chi), 2):
            supports.add(classes[a] | classes[b])
    reducts: list[Graph] = []
    for s in sorted(supports):
        sub, _ = induced(h, s)
        if not any(are_isomorphic(sub, seen) for seen in reducts):
            reducts.append(sub)
    return TargetSpec(h=h, chi=chi, sigma=sigma, reducts=tuple(reducts),
                      colouring=best_colouring)


def random_graph(n: int, p: float, rng) -> Graph:
    """G(n, p) drawn with a ``numpy.random.Generator``."""
    edges = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p]
    return build_graph(n, edges)
