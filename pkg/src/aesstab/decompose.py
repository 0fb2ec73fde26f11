"""Stability decomposition: find H, or a small deletion set leaving G r-partite.

The pipeline mirrors the counting argument it comes from:

1. :func:`clique_partition` either reports many K_{r+1} copies, or splits
   V(G) into an exceptional set D and parts V_1..V_r whose induced maximum
   degrees are at most ceil(eps n).  The parts are grown recursively: X_1 is a
   largest set of bounded internal degree, and the remaining parts come from
   the same procedure (with r - 1) applied inside the neighbourhood of a
   vertex of X_1.
2. :func:`refine_partition` computes the weakly attached sets W_i, the
   middling sets Y_i and the fully attached set X, deletes the edges inside
   the W_i and at Z = X + Y_1 + ... + Y_r, and certifies an r-colouring of
   what is left.
3. :func:`stability_decompose` runs both and tries to embed H whenever the
   counts say H should be there.

At desk scale the density thresholds (mu n^r and friends) are far below one
copy, so every threshold is clamped below by an integer floor and each clamp
is written to the trace.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Iterable, Sequence

from .cliques import (CliqueCensus, Embedding, clique_census, edges_in_many_cliques,
                      erdos_delta, find_blowup, find_subgraph)
from .errors import (CapacityError, InputError, PreconditionError,
                     SearchBudgetExceeded)
from .graph import (Graph, TargetSpec, induced, iter_bits, mask_of, min_degree,
                    popcount)

log = logging.getLogger(__name__)

EXACT_SET_CAP = 20
BLOWUP_BUDGET = 50_000


@dataclass(frozen=True)
class Thresholds:
    """Constants driving the decomposition for a given r.

    ``mu``, ``eta`` and ``gamma`` default to eps^r/r!, eps^(r+1)/(r+1)! and
    (1/(4(3r-1)))^r/r!.  Each ``floor_*`` is the integer lower clamp for
    the corresponding count threshold.  ``edge_multiplier`` is the multiplier on
    biex(n, H) above which the many-clique-edges route searches for H
    (default 1/erdos_delta(r-1, v(H), eps)).  With ``cap_exceptional`` the
    exceptional set found by counting keeps at most floor(eps n) vertices
    (the largest counts win).  ``require_slack`` enforces the minimum-degree
    hypothesis with its full 4 eps n slack instead of the bare threshold.
    """

    r: int
    eps: Fraction
    mu: Fraction
    eta: Fraction
    gamma: Fraction
    floor_witness: int = 1
    floor_exceptional: int = 1
    floor_edges: int = 1
    edge_multiplier: Fraction | None = None
    cap_exceptional: bool = True
    require_slack: bool = False

    @classmethod
    def default(cls, r: int, eps=None, **overrides) -> "Thresholds":
        if r < 1:
            raise InputError("r must be positive")
        eps = Fraction(1, 8 * (3 * r - 1)) if eps is None else Fraction(eps)
        th = cls(r=r, eps=eps,
                 mu=eps ** r / math.factorial(r),
                 eta=eps ** (r + 1) / math.factorial(r + 1),
                 gamma=Fraction(1, 4 * (3 * r - 1)) ** r / math.factorial(r))
        th = replace(th, **overrides)
        th.validate()
        return th

    def validate(self) -> None:
        cap = Fraction(1, 4 * (3 * self.r - 1))
        if not 0 < self.eps <= cap:
            raise InputError(f"eps must lie in (0, 1/(4(3r-1))] = (0, {cap}], got {self.eps}")
        if min(self.mu, self.eta, self.gamma) <= 0:
            raise InputError("mu, eta and gamma must be positive")
        if min(self.floor_witness, self.floor_exceptional, self.floor_edges) < 1:
            raise InputError("floors must be at least 1")

    def degree_bound(self, n: int) -> int:
        """ceil(eps n): the allowed maximum degree inside a part."""
        return math.ceil(self.eps * n)

    def mu_at(self, r: int) -> Fraction:
        return self.eps ** r / math.factorial(r)


class Trace(dict):
    """Threshold values and clamp notes collected during one run."""

    def clamp(self, name: str, analytic, floor: int):
        value = max(analytic, floor)
        self.setdefault("values", {})[name] = float(analytic)
        msg = f"{name}: analytic {float(analytic):.4g} clamped to floor {floor}"
        if floor > analytic and msg not in self.get("clamps", ()):
            self.setdefault("clamps", []).append(msg)
        return value

    def note(self, msg: str) -> None:
        log.debug(msg)
        self.setdefault("notes", []).append(msg)


@dataclass(frozen=True)
class ManyCliquesWitness:
    """G has more K_{r+1} copies than the witness threshold."""

    census: CliqueCensus
    threshold: Fraction

    @property
    def total(self) -> int:
        return self.census.total


@dataclass(frozen=True)
class RawPartition:
    """D and V_1..V_r as vertex masks; ``moved`` are leftovers put into D."""

    d: int
    parts: tuple[int, ...]
    moved: int = 0
    greedy_counts: dict = field(default_factory=dict)


@dataclass(frozen=True)
class Partition:
    d: frozenset[int]
    parts: tuple[frozenset[int], ...]
    w: tuple[frozenset[int], ...]
    y: tuple[frozenset[int], ...]
    x: frozenset[int]
    z: frozenset[int]
    deleted: frozenset[tuple[int, int]]
    colouring: tuple[int, ...]
    source: str
    candidates: dict = field(default_factory=dict)

    @property
    def final_parts(self) -> tuple[frozenset[int], ...]:
        r = len(self.parts)
        return tuple(frozenset(v for v, c in enumerate(self.colouring) if c == i)
                     for i in range(r))


@dataclass(frozen=True)
class DecompositionResult:
    mode: str
    embedding: Embedding | None = None
    partition: Partition | None = None
    trace: dict = field(default_factory=dict)

    @property
    def deleted(self) -> int:
        return len(self.partition.deleted) if self.partition else 0

    def report(self, oracle_opt: int | None = None) -> dict:
        """Flat record: mode, sizes, threshold trace and suboptimality ratio."""
        rec = {"mode": self.mode, "deleted": self.deleted}
        if self.partition is not None:
            p = self.partition
            rec.update(D=len(p.d), Z=len(p.z), part_sizes=[len(s) for s in p.final_parts],
                       source=p.source)
        rec["trace"] = self.trace
        if oracle_opt is not None:
            rec["oracle_opt"] = oracle_opt
            rec["ratio"] = suboptimality(self.deleted, oracle_opt)
        return rec


def suboptimality(deleted: int, optimum: int) -> float:
    if optimum == 0:
        return 1.0 if deleted == 0 else math.inf
    return deleted / optimum


# ----------------------------------------------------------- primitives

def _max_bounded_exact(g: Graph, within: int, d: int) -> int:
    verts = sorted(iter_bits(within), key=lambda v: (-popcount(g.adj[v] & within), v))
    best = 0
    deg = {v: 0 for v in verts}

    def rec(i: int, chosen: int, size: int) -> None:
        nonlocal best
        if size > popcount(best):
            best = chosen
        if i == len(verts) or size + len(verts) - i <= popcount(best):
            return
        v = verts[i]
        inside = g.adj[v] & chosen
        if popcount(inside) <= d and all(deg[u] < d for u in iter_bits(inside)):
            for u in iter_bits(inside):
                deg[u] += 1
            deg[v] = popcount(inside)
            rec(i + 1, chosen | 1 << v, size + 1)
            for u in iter_bits(inside):
                deg[u] -= 1
            deg[v] = 0
        rec(i + 1, chosen, size)

    rec(0, 0, 0)
    return best


def _max_bounded_greedy(g: Graph, within: int, d: int) -> int:
    chosen = 0
    deg: dict[int, int] = {}
    for v in sorted(iter_bits(within), key=lambda v: (popcount(g.adj[v] & within), v)):
        inside = g.adj[v] & chosen
        if popcount(inside) <= d and all(deg[u] < d for u in iter_bits(inside)):
            chosen |= 1 << v
            deg[v] = popcount(inside)
            for u in iter_bits(inside):
                deg[u] += 1
    return chosen


def _bounded_set(g: Graph, within: int, d: int, mode: str) -> int:
    if mode == "auto":
        mode = "exact" if popcount(within) <= EXACT_SET_CAP else "greedy"
    if mode == "exact":
        if popcount(within) > EXACT_SET_CAP:
            raise CapacityError(
                f"exact max_bounded_degree_set cap is {EXACT_SET_CAP} vertices")
        return _max_bounded_exact(g, within, d)
    if mode == "greedy":
        return _max_bounded_greedy(g, within, d)
    raise InputError(f"unknown mode {mode!r}")


def max_bounded_degree_set(g: Graph, d: int, mode: str = "auto",
                           within: Iterable[int] | None = None) -> frozenset[int]:
    """A vertex set S with max degree of g[S] at most ``d``.

    ``exact`` returns a maximum such set (at most 20 candidate vertices);
    ``greedy`` adds vertices in ascending degree order while the bound
    holds, so it is only maximal; ``auto`` picks exact when allowed.
    """
    mask = g.vertices if within is None else mask_of(within)
    return frozenset(iter_bits(_bounded_set(g, mask, d, mode)))


def greedy_clique_extend(g: Graph, seed: Iterable[int],
                         parts: Sequence[Iterable[int]]) -> tuple[int, frozenset[int] | None]:
    """Extend a clique by one vertex from each part in turn.

    Returns the product of the per-step numbers of choices (a lower bound on
    the number of extensions) and the clique obtained by always taking the
    smallest choice, or ``(0, None)`` if some step has no choice.
    """
    seed = list(seed)
    common = g.vertices
    for i, a in enumerate(seed):
        for b in seed[i + 1:]:
            if not g.has_edge(a, b):
                raise InputError("seed is not a clique")
        common &= g.adj[a]
    chosen = mask_of(seed)
    count = 1
    for part in parts:
        pm = mask_of(part)
        if pm & mask_of(seed):
            raise InputError("parts must be disjoint from the seed")
        choices = common & pm
        if not choices:
            return 0, None
        count *= popcount(choices)
        v = (choices & -choices).bit_length() - 1
        chosen |= 1 << v
        common &= g.adj[v]
    return count, frozenset(iter_bits(chosen))


def _check_min_degree(g: Graph, r: int, th: Thresholds, trace: Trace) -> None:
    n = g.n
    if n == 0:
        raise InputError("empty graph")
    delta = min_degree(g)
    bare = Fraction(3 * r - 4, 3 * r - 1) * n
    trace["min_degree"] = delta
    trace["slack"] = float(Fraction(delta) - bare) / n
    if th.require_slack:
        bar = bare + 4 * th.eps * n
        if not delta > bar:
            raise PreconditionError(
                f"minimum degree {delta} does not exceed (1-3/(3r-1)+4eps)n = {float(bar):.3f}; "
                f"deficit {float(bar - delta) + 1e-9:.3f}", deficit=float(bar - delta))
    elif delta < bare:
        raise PreconditionError(
            f"minimum degree {delta} is below (1-3/(3r-1))n = {float(bare):.3f}; "
            f"deficit {float(bare - delta):.3f}", deficit=float(bare - delta))


# ------------------------------------------------ bounded-degree partition

def _census_on(g: Graph, alive: int, k: int) -> dict[int, int]:
    sub, relabel = induced(g, alive)
    census = clique_census(sub, k)
    return {v: census.per_vertex[i] for v, i in relabel.items()}


def _split(g: Graph, alive: int, r: int, n: int, th: Thresholds,
           trace: Trace, raw_moves: list) -> tuple[int, list[int]]:
    b = th.degree_bound(n)
    if r == 1:
        exceptional = 0
        for v in iter_bits(alive):
            if popcount(g.adj[v] & alive) > b:
                exceptional |= 1 << v
        return exceptional, [alive & ~exceptional]

    counts = _census_on(g, alive, r + 1)
    bar = trace.clamp(f"mu*n^{r}", th.mu_at(r) * n ** r, th.floor_exceptional)
    heavy = sorted((v for v, c in counts.items() if c > bar), key=lambda v: (-counts[v], v))
    if th.cap_exceptional and len(heavy) > math.floor(th.eps * n):
        keep = math.floor(th.eps * n)
        trace.note(f"r={r}: {len(heavy)} vertices above the clique bar, kept {keep}")
        heavy = heavy[:keep]
    exceptional = mask_of(heavy)
    rest = alive & ~exceptional
    x1 = _bounded_set(g, rest, b, "auto")
    if not x1:
        return exceptional | rest, [0] * r
    # largest remaining neighbourhood keeps the recursive instance biggest
    v = max(iter_bits(x1), key=lambda u: (popcount(g.adj[u] & rest & ~x1), -u))
    nbhd = g.adj[v] & rest & ~x1
    _, inner = _split(g, nbhd, r - 1, n, th, trace, raw_moves)
    xs = [x1] + inner
    parts = list(xs)
    covered = 0
    for m in parts:
        covered |= m
    leftover = rest & ~covered
    stuck = 0
    for l in iter_bits(leftover):
        best_i, best_att = None, None
        for i, xi in enumerate(xs):
            att = popcount(g.adj[l] & xi)
            if att >= b:
                continue
            inside = g.adj[l] & parts[i]
            if popcount(inside) > b or any(popcount(g.adj[u] & parts[i]) >= b
                                           for u in iter_bits(inside)):
                continue
            if best_att is None or att < best_att:
                best_i, best_att = i, att
        if best_i is None:
            stuck |= 1 << l
        else:
            parts[best_i] |= 1 << l
    if stuck:
        order = sorted(range(r), key=lambda i: (-popcount(parts[i]), i))
        for l in iter_bits(stuck):
            count, _ = greedy_clique_extend(
                g, [l], [list(iter_bits(parts[i])) for i in order])
            raw_moves.append((r, l, count))
    return exceptional | stuck, parts


def clique_partition(g: Graph, r: int, th: Thresholds | None = None,
                     allow_witness: bool = True,
                     trace: Trace | None = None) -> ManyCliquesWitness | RawPartition:
    """Many K_{r+1} copies, or a partition D, V_1..V_r with bounded part degrees.

    Leftover vertices that fit no part are moved into D; for each, the
    number of greedy (r+1)-clique extensions through it is recorded in
    ``greedy_counts``.  |D| is reported, not bounded.
    """
    if r < 1:
        raise InputError("r must be positive")
    th = th or Thresholds.default(r)
    if th.r != r:
        raise InputError(f"thresholds were built for r={th.r}, not r={r}")
    trace = Trace() if trace is None else trace
    _check_min_degree(g, r, th, trace)
    n = g.n
    census = clique_census(g, r + 1)
    bar = trace.clamp(f"eta*n^{r + 1}", th.eta * n ** (r + 1), th.floor_witness)
    trace["clique_total"] = census.total
    if allow_witness and census.total > bar:
        return ManyCliquesWitness(census, Fraction(bar))
    moves: list = []
    d, parts = _split(g, g.vertices, r, n, th, trace, moves)
    moved = 0
    greedy_counts = {}
    for level, v, count in moves:
        moved |= 1 << v
        greedy_counts[v] = count
    b = th.degree_bound(n)
    for m in parts:
        top = max((popcount(g.adj[v] & m) for v in iter_bits(m)), default=0)
        assert top <= b, "part degree bound violated"
    return RawPartition(d, tuple(parts), moved, greedy_counts)


# --------------------------------------------------------- refinement

def _colour_is_proper(g: Graph, deleted: set, colour: Sequence[int]) -> bool:
    return all(colour[u] != colour[v] or (u, v) in deleted for u, v in g.edges())


def _mono_edges(g: Graph, colour: Sequence[int]) -> set[tuple[int, int]]:
    return {(u, v) for u, v in g.edges() if colour[u] == colour[v]}


def _polish(g: Graph, colour: list[int], r: int) -> list[int]:
    # single-vertex moves to the part holding the fewest neighbours
    colour = list(colour)
    improved = True
    while improved:
        improved = False
        for v in range(g.n):
            counts = [0] * r
            for u in iter_bits(g.adj[v]):
                counts[colour[u]] += 1
            best = min(range(r), key=lambda i: (counts[i], i))
            if counts[best] < counts[colour[v]]:
                colour[v] = best
                improved = True
    return colour


def refine_partition(g: Graph, raw: RawPartition, th: Thresholds,
                     trace: Trace | None = None) -> Partition:
    """Split D into W-, Y- and X-type vertices and build the deletion set.

    The deletion set is every edge inside some W_i plus every edge at
    Z = X + Y_1 + ... + Y_r, certified by the colouring "vertex -> a W_i
    containing it".  Two alternatives are always computed as well: deleting
    the edges inside the final parts (each vertex of D joins the part where
    it has fewest neighbours), and the same after single-vertex improving
    moves.  The smallest certified set is returned; ``source`` names it.
    """
    trace = Trace() if trace is None else trace
    n = g.n
    r = len(raw.parts)
    parts = list(raw.parts)
    low = Fraction(n, 4 * (3 * r - 1))
    high_gap = Fraction(3 * n, 2 * (3 * r - 1))
    att = [[popcount(g.adj[v] & p) for p in parts] for v in range(n)]
    w = [mask_of(v for v in range(n) if att[v][i] <= low) for i in range(r)]
    y = [mask_of(v for v in iter_bits(raw.d)
                 if low < att[v][i] < popcount(parts[i]) - high_gap) for i in range(r)]
    any_w = any_y = 0
    for i in range(r):
        any_w |= w[i]
        any_y |= y[i]
    x = raw.d & ~any_w & ~any_y
    z = x | any_y

    wz_deleted = set()
    for u, v in g.edges():
        if (z >> u | z >> v) & 1 or any((m >> u) & (m >> v) & 1 for m in w):
            wz_deleted.add((u, v))
    w_colour = []
    for v in range(n):
        homes = [i for i in range(r) if w[i] >> v & 1]
        w_colour.append(homes[0] if homes else (0 if z >> v & 1 else -1))
    candidates = {}
    if -1 not in w_colour and _colour_is_proper(g, wz_deleted, w_colour):
        candidates["wz"] = (wz_deleted, w_colour)
    else:
        trace.note("deletion set from W/Z did not certify; using part-based sets")

    colour = [-1] * n
    for i, m in enumerate(parts):
        for v in iter_bits(m):
            colour[v] = i
    for v in range(n):
        if colour[v] < 0:
            homes = [i for i in range(r) if w[i] >> v & 1 and not z >> v & 1] or list(range(r))
            colour[v] = min(homes, key=lambda i: (att[v][i], i))
    candidates["parts"] = (_mono_edges(g, colour), colour)
    polished = _polish(g, colour, r)
    candidates["polished"] = (_mono_edges(g, polished), polished)

    source = min(candidates, key=lambda k: (len(candidates[k][0]),
                                            ("wz", "parts", "polished").index(k)))
    deleted, final = candidates[source]
    final = [c if c >= 0 else 0 for c in final]
    if not _colour_is_proper(g, deleted, final):
        raise AssertionError("residual colouring failed certification")

    def fs(m: int) -> frozenset[int]:
        return frozenset(iter_bits(m))

    return Partition(d=fs(raw.d), parts=tuple(fs(p) for p in parts),
                     w=tuple(fs(m) for m in w), y=tuple(fs(m) for m in y),
                     x=fs(x), z=fs(z), deleted=frozenset(deleted), colouring=tuple(final),
                     source=source, candidates={k: len(v[0]) for k, v in candidates.items()})


# ------------------------------------------------------------- top level

def _search_target(g: Graph, target: TargetSpec,
                   census: CliqueCensus | None, trace: Trace) -> Embedding | None:
    k, s = target.chi, target.blowup_size
    if k * s <= 24:
        try:
            blow = find_blowup(g, k, s, budget=BLOWUP_BUDGET)
        except SearchBudgetExceeded:
            blow = None
            trace.note("blow-up search budget exhausted")
        if blow is not None:
            classes = [[v for v in range(target.vH) if target.colouring[v] == c]
                       for c in range(k)]
            assignment = [0] * target.vH
            for c, members in enumerate(classes):
                for j, x in enumerate(members):
                    assignment[x] = blow.assignment[c * s + j]
            emb = Embedding(tuple(assignment))
            if emb.validate(target.h, g):
                return emb
    order = None
    if census is not None:
        order = sorted(range(g.n), key=lambda v: (-census.per_vertex[v], v))
    return find_subgraph(g, target.h, order=order)


def stability_decompose(g: Graph, target: TargetSpec,
                        th: Thresholds | None = None) -> DecompositionResult:
    """Embed H in G, or return a certified deletion set making G r-partite.

    r = chi(H) - 1.  H is searched for whenever a counting route says it
    should be present: many K_{r+1} copies overall, more than C biex(n, H)
    edges in many K_{r+1} copies, or |Z| above (sigma(H) - 1)/delta.
    """
    from .extremal import biex_bounds

    r = target.chi - 1
    if r < 2:
        raise InputError("target must have chromatic number at least 3")
    th = th or Thresholds.default(r)
    trace = Trace(r=r, eps=float(th.eps), n=g.n)
    first = clique_partition(g, r, th, trace=trace)
    census = None
    if isinstance(first, ManyCliquesWitness):
        census = first.census
        trace.note(f"{first.total} copies of K_{r + 1} exceed the witness bar")
        emb = _search_target(g, target, census, trace)
        if emb is not None:
            return DecompositionResult("embedding", embedding=emb, trace=dict(trace))
        trace.note("target absent despite many cliques; partitioning anyway")
        first = clique_partition(g, r, th, allow_witness=False, trace=trace)
    part = refine_partition(g, first, th, trace)

    n = g.n
    census = census or clique_census(g, r + 1)
    edge_bar = trace.clamp(f"eps*n^{r - 1}", th.eps * n ** (r - 1), th.floor_edges)
    many = edges_in_many_cliques(g, r + 1, math.ceil(edge_bar), census)
    c_mult = th.edge_multiplier
    if c_mult is None:
        c_mult = 1 / erdos_delta(r - 1, target.vH, th.eps)
    bounds = biex_bounds(n, target)
    trace["many_clique_edges"] = len(many)
    trace["biex_upper"] = bounds.upper
    trace["edge_multiplier"] = float(c_mult)
    search = len(many) > c_mult * bounds.upper
    delta = erdos_delta(r, target.vH, min(th.gamma, Fraction(1)))
    if len(part.z) > (target.sigma - 1) / delta:
        trace.note(f"|Z| = {len(part.z)} exceeds (sigma-1)/delta")
        search = True
    if search:
        emb = _search_target(g, target, census, trace)
        if emb is not None:
            return DecompositionResult("embedding", embedding=emb, trace=dict(trace))
    return DecompositionResult("partition", partition=part, trace=dict(trace))
