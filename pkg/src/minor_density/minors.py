"""Minor operations, containment, closures and densest-minor search.

Two independent densest-minor backends are provided:

* ``closure`` recurses over one-step minors with a memo keyed by canonical
  certificate; witnesses are composed back through each operation.
* ``branch`` enumerates every family of disjoint connected branch sets and
  scores the quotient graph with all edges kept.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Optional

from .canon import CanonicalForm, canonical_form
from .enumerate import GuardrailError
from .graph import Edge, GraphError, SimpleGraph, bits, density, mask_connected, rank

DEFAULT_LIMIT = 10


def default_limit() -> int:
    """Vertex guardrail for closure-based searches (``MDL_MAX_N`` overrides)."""
    try:
        return int(os.environ.get("MDL_MAX_N", DEFAULT_LIMIT))
    except ValueError:
        return DEFAULT_LIMIT


def _check_limit(g, limit: Optional[int]) -> None:
    limit = default_limit() if limit is None else limit
    if g.n > limit:
        raise GuardrailError(f"graph has {g.n} vertices; the limit is {limit}")


@dataclass(frozen=True)
class MinorWitness:
    """``branch_sets[i]`` is the host vertex set that becomes minor vertex ``i``."""

    branch_sets: tuple[frozenset[int], ...]

    def validate(self, minor: SimpleGraph, host: SimpleGraph) -> bool:
        if len(self.branch_sets) != minor.n:
            return False
        used = 0
        masks = []
        for bs in self.branch_sets:
            mk = 0
            for v in bs:
                if not 0 <= v < host.n:
                    return False
                mk |= 1 << v
            if mk & used or not mask_connected(host, mk):
                return False
            used |= mk
            masks.append(mk)
        for u, v in minor.edges():
            reach = 0
            for x in bits(masks[u]):
                reach |= host.adj[x]
            if not reach & masks[v]:
                return False
        return True

    def as_lists(self) -> list[list[int]]:
        return [sorted(bs) for bs in self.branch_sets]


# -- single operations ------------------------------------------------------

def _drop_vertex(adj: list[int], v: int) -> tuple[int, ...]:
    low = (1 << v) - 1
    out = []
    for i, row in enumerate(adj):
        if i == v:
            continue
        out.append((row & low) | ((row >> (v + 1)) << v))
    return tuple(out)


def contract_edge(g: SimpleGraph, e: Edge) -> SimpleGraph:
    """Merge the endpoints of ``e`` into the smaller one; parallels collapse."""
    u, v = sorted(e)
    if not g.has_edge(u, v):
        raise GraphError(f"{u}-{v} is not an edge")
    adj = list(g.adj)
    merged = (adj[u] | adj[v]) & ~(1 << u) & ~(1 << v)
    adj[u] = merged
    for w in bits(adj[v]):
        if w != u:
            adj[w] = (adj[w] & ~(1 << v)) | (1 << u)
    return SimpleGraph(g.n - 1, _drop_vertex(adj, v))


def delete_edge(g: SimpleGraph, e: Edge) -> SimpleGraph:
    u, v = e
    if not g.has_edge(u, v):
        raise GraphError(f"{u}-{v} is not an edge")
    adj = list(g.adj)
    adj[u] &= ~(1 << v)
    adj[v] &= ~(1 << u)
    return SimpleGraph(g.n, tuple(adj))


def delete_vertex(g: SimpleGraph, v: int) -> SimpleGraph:
    if not 0 <= v < g.n:
        raise GraphError(f"vertex {v} not in graph")
    if g.n == 1:
        raise GraphError("cannot delete the last vertex")
    return SimpleGraph(g.n - 1, _drop_vertex(list(g.adj), v))


def _single_steps(g: SimpleGraph) -> Iterator[tuple[SimpleGraph, tuple[frozenset[int], ...]]]:
    """Every single deletion or contraction with the branch sets it induces."""
    n = g.n
    singles = tuple(frozenset([v]) for v in range(n))
    for u, v in g.edges():
        yield delete_edge(g, (u, v)), singles
    if n > 1:
        for v in range(n):
            yield delete_vertex(g, v), singles[:v] + singles[v + 1:]
        for u, v in g.edges():
            sets = list(singles)
            sets[u] = frozenset((u, v))
            del sets[v]
            yield contract_edge(g, (u, v)), tuple(sets)


def one_step_minors(g: SimpleGraph) -> frozenset[CanonicalForm]:
    return frozenset(canonical_form(h) for h, _ in _single_steps(g))


# -- closure ----------------------------------------------------------------

@dataclass
class MinorClosure:
    root: CanonicalForm
    members: dict[bytes, SimpleGraph]
    densest: dict[bytes, Fraction] = field(default_factory=dict)

    def __contains__(self, g: SimpleGraph) -> bool:
        return canonical_form(g).cert in self.members

    def __len__(self) -> int:
        return len(self.members)


def minor_closure(g: SimpleGraph, limit: Optional[int] = None) -> MinorClosure:
    """All minors of ``g`` (up to isomorphism) with per-member densest density."""
    _check_limit(g, limit)
    root = canonical_form(g)
    members = {root.cert: root.graph}
    children: dict[bytes, set[bytes]] = {}
    stack = [root.cert]
    while stack:
        cert = stack.pop()
        kids = set()
        for cf in one_step_minors(members[cert]):
            kids.add(cf.cert)
            if cf.cert not in members:
                members[cf.cert] = cf.graph
                stack.append(cf.cert)
        children[cert] = kids
    # fewer vertices first is a valid bottom-up order: no operation adds vertices,
    # and among equal n the edge deletions only go to fewer edges
    order = sorted(members, key=lambda c: (members[c].n, members[c].m))
    best: dict[bytes, Fraction] = {}
    for cert in order:
        value = density(members[cert])
        for kid in children[cert]:
            value = max(value, best[kid])
        best[cert] = value
    return MinorClosure(root, members, best)


# -- closure-backed densest minor -------------------------------------------

@dataclass(frozen=True)
class _Best:
    density: Fraction
    n: int
    cert: bytes
    graph: SimpleGraph
    # branch sets relative to the canonical graph of the memo key
    sets: tuple[frozenset[int], ...]

    def beats(self, other: "_Best") -> bool:
        if self.density != other.density:
            return self.density > other.density
        if self.n != other.n:
            return self.n < other.n
        return self.cert < other.cert


class MemoTable:
    """Densest-minor results keyed by canonical certificate.

    Every writer computes the same value for a key, so concurrent
    insert-if-absent needs no locking beyond the dict's own atomicity.
    """

    def __init__(self):
        self.simple: dict[bytes, _Best] = {}
        self.multi: dict = {}

    def clear(self) -> None:
        self.simple.clear()
        self.multi.clear()

    def __len__(self) -> int:
        return len(self.simple) + len(self.multi)


MEMO = MemoTable()


def _best_of(cf: CanonicalForm) -> _Best:
    hit = MEMO.simple.get(cf.cert)
    if hit is not None:
        return hit
    c = cf.graph
    best = _Best(density(c), c.n, cf.cert, c, tuple(frozenset([v]) for v in range(c.n)))
    for cand in _proper_candidates(c):
        if cand.beats(best):
            best = cand
    MEMO.simple.setdefault(cf.cert, best)
    return best


def _proper_candidates(c: SimpleGraph) -> Iterator[_Best]:
    """Best minor reachable through each single step, in ``c``'s labels."""
    for h, sets in _single_steps(c):
        hcf = canonical_form(h)
        sub = _best_of(hcf)
        inv = [0] * h.n
        for v, p in enumerate(hcf.perm):
            inv[p] = v
        composed = tuple(
            frozenset().union(*(sets[inv[j]] for j in bs)) for bs in sub.sets
        )
        yield _Best(sub.density, sub.n, sub.cert, sub.graph, composed)


def _pull_back(cf: CanonicalForm, sets) -> MinorWitness:
    inv = [0] * len(cf.perm)
    for v, p in enumerate(cf.perm):
        inv[p] = v
    return MinorWitness(tuple(frozenset(inv[x] for x in bs) for bs in sets))


def _densest_closure(g: SimpleGraph):
    cf = canonical_form(g)
    best = _best_of(cf)
    return best.graph, best.density, _pull_back(cf, best.sets)


# -- branch-set densest minor ----------------------------------------------

def connected_subsets(g: SimpleGraph) -> list[int]:
    """All nonempty connected vertex subsets as bitmasks."""
    seen = set()
    frontier = [1 << v for v in range(g.n)]
    seen.update(frontier)
    while frontier:
        nxt = []
        for s in frontier:
            reach = 0
            for v in bits(s):
                reach |= g.adj[v]
            for w in bits(reach & ~s):
                t = s | (1 << w)
                if t not in seen:
                    seen.add(t)
                    nxt.append(t)
        frontier = nxt
    return sorted(seen, key=lambda s: (s.bit_count(), s))


def _densest_branch(g: SimpleGraph):
    subsets = connected_subsets(g)
    by_low: list[list[tuple[int, int]]] = [[] for _ in range(g.n)]
    for s in subsets:
        reach = 0
        for v in bits(s):
            reach |= g.adj[v]
        by_low[(s & -s).bit_length() - 1].append((s, reach & ~s))

    best = [Fraction(-1), 0]
    ties: list[tuple[tuple[int, int], ...]] = []
    blocks: list[tuple[int, int]] = []

    def rec(remaining: int, edges: int) -> None:
        if not remaining:
            k = len(blocks)
            if not k:
                return
            value = Fraction(edges, k)
            if value > best[0] or (value == best[0] and k < best[1]):
                best[0], best[1] = value, k
                ties.clear()
            if value == best[0] and k == best[1]:
                ties.append(tuple(blocks))
            return
        low = remaining & -remaining
        v = low.bit_length() - 1
        rec(remaining ^ low, edges)
        for s, nbr in by_low[v]:
            if s & ~remaining:
                continue
            gained = sum(1 for b, _ in blocks if nbr & b)
            blocks.append((s, nbr))
            rec(remaining & ~s, edges + gained)
            blocks.pop()

    rec((1 << g.n) - 1, 0)

    chosen = None
    for family in ties:
        h = quotient(g, [b for b, _ in family])
        cf = canonical_form(h)
        if chosen is None or cf.cert < chosen[0].cert:
            chosen = (cf, family)
    cf, family = chosen
    inv = [0] * cf.graph.n
    for v, p in enumerate(cf.perm):
        inv[p] = v
    witness = MinorWitness(tuple(frozenset(bits(family[inv[i]][0])) for i in range(cf.graph.n)))
    return cf.graph, best[0], witness


def quotient(g: SimpleGraph, masks: list[int]) -> SimpleGraph:
    """Graph on the branch sets, adjacent when some host edge joins them."""
    reach = []
    for s in masks:
        r = 0
        for v in bits(s):
            r |= g.adj[v]
        reach.append(r)
    edges = [
        (i, j)
        for i in range(len(masks))
        for j in range(i + 1, len(masks))
        if reach[i] & masks[j]
    ]
    return SimpleGraph.from_edges(len(masks), edges)


BACKENDS = ("closure", "branch")


def densest_minor(g: SimpleGraph, backend: str = "closure", limit: Optional[int] = None):
    """A densest minor as ``(minor, density, witness)``.

    Ties prefer fewer vertices, then the smaller canonical certificate; the
    minor is returned in canonical labelling.
    """
    _check_limit(g, limit)
    if backend == "closure":
        return _densest_closure(g)
    if backend == "branch":
        return _densest_branch(g)
    raise ValueError(f"unknown backend {backend!r}")


def densest_minor_density(g: SimpleGraph, backend: str = "closure", limit: Optional[int] = None) -> Fraction:
    return densest_minor(g, backend, limit)[1]


# -- minimality ---------------------------------------------------------------

@dataclass(frozen=True)
class MinimalityCertificate:
    subject: SimpleGraph
    verdict: bool
    subject_density: Fraction
    best_proper_minor: Optional[tuple[SimpleGraph, Fraction, MinorWitness]]


def is_density_minimal(g: SimpleGraph, limit: Optional[int] = None) -> MinimalityCertificate:
    """Density-minimal iff every proper minor is strictly sparser."""
    _check_limit(g, limit)
    cf = canonical_form(g)
    best = None
    for cand in _proper_candidates(cf.graph):
        if best is None or cand.beats(best):
            best = cand
    own = density(g)
    if best is None:
        return MinimalityCertificate(g, True, own, None)
    proper = (best.graph, best.density, _pull_back(cf, best.sets))
    return MinimalityCertificate(g, best.density < own, own, proper)


def is_rank_minimal(g: SimpleGraph) -> bool:
    """No single deletion or contraction keeps the cycle rank.

    Every single operation is rank non-increasing, so an equal-rank proper
    minor would force an equal-rank one-step minor on the way to it.
    """
    r = rank(g)
    return all(rank(h) != r for h, _ in _single_steps(g))


# -- containment --------------------------------------------------------------

def is_minor(h: SimpleGraph, g: SimpleGraph) -> Optional[MinorWitness]:
    """Branch-set backtracking; returns a witness or ``None``."""
    if h.n > g.n or h.m > g.m or rank(h) > rank(g):
        return None
    subsets = connected_subsets(g)
    info = []
    for s in subsets:
        reach = 0
        for v in bits(s):
            reach |= g.adj[v]
        info.append((s, reach & ~s))

    order = _placement_order(h)
    position = {v: i for i, v in enumerate(order)}
    placed_nbrs = [
        [position[u] for u in h.neighbors(v) if position[u] < i] for i, v in enumerate(order)
    ]
    need = [h.degree(v) for v in order]
    assigned: list[int] = []
    full = (1 << g.n) - 1

    def rec(i: int, used: int) -> bool:
        if i == len(order):
            return True
        if (full & ~used).bit_count() < len(order) - i:
            return False
        for s, nbr in info:
            if s & used or nbr.bit_count() < need[i]:
                continue
            if all(nbr & assigned[j] for j in placed_nbrs[i]):
                assigned.append(s)
                if rec(i + 1, used | s):
                    return True
                assigned.pop()
        return False

    if not rec(0, 0):
        return None
    sets = [frozenset()] * h.n
    for i, v in enumerate(order):
        sets[v] = frozenset(bits(assigned[i]))
    return MinorWitness(tuple(sets))


def _placement_order(h: SimpleGraph) -> list[int]:
    """BFS from high-degree vertices so adjacency constraints bind early."""
    order: list[int] = []
    seen = set()
    for start in sorted(range(h.n), key=lambda v: (-h.degree(v), v)):
        if start in seen:
            continue
        seen.add(start)
        queue = [start]
        while queue:
            v = queue.pop(0)
            order.append(v)
            for u in sorted(h.neighbors(v), key=lambda u: (-h.degree(u), u)):
                if u not in seen:
                    seen.add(u)
                    queue.append(u)
    return order
