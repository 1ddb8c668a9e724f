"""Small simple graphs stored as adjacency bitmasks, plus the named families."""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from typing import Iterable, Sequence

MAX_VERTICES = 32

Edge = tuple[int, int]


class GraphError(ValueError):
    """Raised for malformed graphs or invalid construction parameters."""


@dataclass(frozen=True)
class SimpleGraph:
    """Simple undirected graph on vertices ``0..n-1``.

    ``adj[v]`` is a bitmask of the neighbours of ``v``.  Instances are
    immutable and hashable, so they can be used as dictionary keys.
    """

    n: int
    adj: tuple[int, ...]

    def __post_init__(self) -> None:
        if not 1 <= self.n <= MAX_VERTICES:
            raise GraphError(f"vertex count must be in 1..{MAX_VERTICES}, got {self.n}")
        if len(self.adj) != self.n:
            raise GraphError("adjacency length does not match vertex count")
        full = (1 << self.n) - 1
        for v, row in enumerate(self.adj):
            if row & ~full:
                raise GraphError(f"vertex {v} has a neighbour outside the graph")
            if row >> v & 1:
                raise GraphError(f"self-loop at vertex {v}")
            rest = row
            while rest:
                low = rest & -rest
                u = low.bit_length() - 1
                if not self.adj[u] >> v & 1:
                    raise GraphError(f"adjacency not symmetric at {u}-{v}")
                rest ^= low

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence[int]]) -> "SimpleGraph":
        if not 1 <= n <= MAX_VERTICES:
            raise GraphError(f"vertex count must be in 1..{MAX_VERTICES}, got {n}")
        adj = [0] * n
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge {u}-{v} out of range for n={n}")
            if u == v:
                raise GraphError(f"self-loop at vertex {u}")
            if adj[u] >> v & 1:
                raise GraphError(f"parallel edge {u}-{v}")
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return cls(n, tuple(adj))

    @classmethod
    def empty(cls, n: int) -> "SimpleGraph":
        return cls(n, (0,) * n)

    @cached_property
    def m(self) -> int:
        return sum(row.bit_count() for row in self.adj) // 2

    def edges(self) -> list[Edge]:
        out = []
        for u in range(self.n):
            row = self.adj[u] >> (u + 1)
            v = u + 1
            while row:
                if row & 1:
                    out.append((u, v))
                row >>= 1
                v += 1
        return out

    def neighbors(self, v: int) -> list[int]:
        return bits(self.adj[v])

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def has_edge(self, u: int, v: int) -> bool:
        return 0 <= u < self.n and 0 <= v < self.n and bool(self.adj[u] >> v & 1)

    def induced(self, vertices: Iterable[int]) -> "SimpleGraph":
        """Induced subgraph, relabelled in increasing vertex order."""
        keep = sorted(set(vertices))
        index = {v: i for i, v in enumerate(keep)}
        edges = [(index[u], index[v]) for u, v in self.edges() if u in index and v in index]
        return SimpleGraph.from_edges(len(keep), edges)

    def relabel(self, perm: Sequence[int]) -> "SimpleGraph":
        """Graph with vertex ``v`` renamed to ``perm[v]``."""
        adj = [0] * self.n
        for v in range(self.n):
            row = 0
            for u in bits(self.adj[v]):
                row |= 1 << perm[u]
            adj[perm[v]] = row
        return SimpleGraph(self.n, tuple(adj))

    def to_text(self) -> str:
        body = ", ".join(f"{u}-{v}" for u, v in self.edges())
        return f"n={self.n}; {body}" if body else f"n={self.n}"

    def __repr__(self) -> str:
        return f"SimpleGraph({self.to_text()!r})"


def bits(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def density(g: SimpleGraph) -> Fraction:
    return Fraction(g.m, g.n)


def components(g: SimpleGraph) -> list[int]:
    """Connected components as vertex bitmasks, ordered by lowest vertex."""
    seen = 0
    out = []
    for v in range(g.n):
        if seen >> v & 1:
            continue
        comp = frontier = 1 << v
        while frontier:
            nxt = 0
            for u in bits(frontier):
                nxt |= g.adj[u]
            frontier = nxt & ~comp
            comp |= frontier
        seen |= comp
        out.append(comp)
    return out


def is_connected(g: SimpleGraph) -> bool:
    return len(components(g)) == 1


def rank(g: SimpleGraph) -> int:
    """Cycle rank ``m - n + c``; equals ``m + 1 - n`` for connected graphs."""
    return g.m - g.n + len(components(g))


def mask_connected(g: SimpleGraph, mask: int) -> bool:
    """Whether the subgraph induced by ``mask`` is nonempty and connected."""
    if not mask:
        return False
    reached = frontier = mask & -mask
    while frontier:
        nxt = 0
        for u in bits(frontier):
            nxt |= g.adj[u]
        frontier = nxt & mask & ~reached
        reached |= frontier
    return reached == mask


def disjoint_union(graphs: Sequence[SimpleGraph]) -> SimpleGraph:
    edges: list[Edge] = []
    offset = 0
    for g in graphs:
        edges.extend((u + offset, v + offset) for u, v in g.edges())
        offset += g.n
    return SimpleGraph.from_edges(offset, edges)


def attach_across(g: SimpleGraph, edges: Sequence[Edge]) -> SimpleGraph:
    """Add one new degree-two vertex adjacent to both ends of each listed edge."""
    new = list(g.edges())
    n = g.n
    for u, v in edges:
        if not g.has_edge(u, v):
            raise GraphError(f"{u}-{v} is not an edge")
        new += [(u, n), (v, n)]
        n += 1
    return SimpleGraph.from_edges(n, new)


def add_apex(g: SimpleGraph) -> SimpleGraph:
    """``g`` plus a new last vertex adjacent to every vertex of ``g``."""
    return SimpleGraph.from_edges(g.n + 1, g.edges() + [(v, g.n) for v in range(g.n)])


# -- named families ---------------------------------------------------------

def _path(k: int) -> SimpleGraph:
    if k < 1:
        raise GraphError("path needs at least one vertex")
    return SimpleGraph.from_edges(k, [(i, i + 1) for i in range(k - 1)])


def _cycle(k: int) -> SimpleGraph:
    if k < 3:
        raise GraphError("cycle needs at least three vertices")
    return SimpleGraph.from_edges(k, [(i, (i + 1) % k) for i in range(k)])


def _complete(k: int) -> SimpleGraph:
    if k < 1:
        raise GraphError("complete graph needs at least one vertex")
    return SimpleGraph.from_edges(k, combinations(range(k), 2))


def _complete_bipartite(a: int, b: int) -> SimpleGraph:
    if a < 1 or b < 1:
        raise GraphError("complete_bipartite sides must be positive")
    return SimpleGraph.from_edges(a + b, [(i, a + j) for i in range(a) for j in range(b)])


def _friendship(i: int) -> SimpleGraph:
    # centre 0; triangle t uses vertices 2t+1, 2t+2
    if i < 1:
        raise GraphError("friendship graph needs at least one triangle")
    edges = []
    for t in range(i):
        a, b = 2 * t + 1, 2 * t + 2
        edges += [(0, a), (0, b), (a, b)]
    return SimpleGraph.from_edges(2 * i + 1, edges)


def _f_prime(i: int) -> SimpleGraph:
    return attach_across(_friendship(i), [(1, 2)])


def _f_double_prime(i: int) -> SimpleGraph:
    second = (3, 4) if i >= 2 else (0, 1)
    return attach_across(_friendship(i), [(1, 2), second])


def _theta(a: int, b: int, c: int) -> SimpleGraph:
    lengths = (a, b, c)
    if min(lengths) < 1:
        raise GraphError("theta path lengths must be positive")
    if sum(1 for x in lengths if x == 1) > 1:
        raise GraphError("theta graph with two length-1 paths would need a parallel edge")
    edges = []
    n = 2
    for length in lengths:
        prev = 0
        for _ in range(length - 1):
            edges.append((prev, n))
            prev = n
            n += 1
        edges.append((prev, 1))
    return SimpleGraph.from_edges(n, edges)


def _diamond() -> SimpleGraph:
    return SimpleGraph.from_edges(4, [(0, 1), (0, 2), (1, 2), (0, 3), (1, 3)])


def _cycle_of_triangles(t: int) -> SimpleGraph:
    if t < 3:
        raise GraphError("cycle_of_triangles needs t >= 3")
    edges = []
    for i in range(t):
        j = (i + 1) % t
        edges += [(i, j), (i, t + i), (j, t + i)]
    return SimpleGraph.from_edges(2 * t, edges)


def _book(k: int) -> SimpleGraph:
    if k < 1:
        raise GraphError("book needs at least one page")
    return SimpleGraph.from_edges(k + 2, [(0, 1)] + [(s, 2 + p) for p in range(k) for s in (0, 1)])


def _empty(k: int) -> SimpleGraph:
    if k < 1:
        raise GraphError("empty graph needs at least one vertex")
    return SimpleGraph.empty(k)


_FAMILIES = {
    "path": (_path, 1),
    "cycle": (_cycle, 1),
    "complete": (_complete, 1),
    "complete_bipartite": (_complete_bipartite, 2),
    "friendship": (_friendship, 1),
    "f_prime": (_f_prime, 1),
    "f_double_prime": (_f_double_prime, 1),
    "theta": (_theta, 3),
    "diamond": (_diamond, 0),
    "cycle_of_triangles": (_cycle_of_triangles, 1),
    "book": (_book, 1),
    "empty": (_empty, 1),
}

NAMED_FAMILIES = tuple(_FAMILIES)


def make_named(name: str, params: Sequence[int] = ()) -> SimpleGraph:
    """Build a named graph.

    ``path`` and ``cycle`` take a vertex count; ``friendship``, ``f_prime``
    and ``f_double_prime`` take the number of triangles; ``book`` takes the
    number of triangles sharing the spine edge.
    """
    try:
        build, arity = _FAMILIES[name]
    except KeyError:
        raise GraphError(f"unknown graph family {name!r}") from None
    if len(params) != arity:
        raise GraphError(f"{name} takes {arity} parameter(s), got {len(params)}")
    g = build(*params)
    return g


def parse_named(text: str) -> SimpleGraph:
    """Parse ``name:p1,p2,...`` (e.g. ``theta:1,2,3``)."""
    name, _, rest = text.strip().partition(":")
    try:
        params = [int(p) for p in rest.split(",") if p.strip()]
    except ValueError:
        raise GraphError(f"bad parameters in {text!r}") from None
    return make_named(name.strip(), params)


_EDGE_RE = re.compile(r"^\s*(\d+)\s*-\s*(\d+)\s*$")


def parse_edge_list(text: str) -> SimpleGraph:
    """Parse ``n=<k>; u-v, u-v, ...``."""
    head, _, body = text.strip().partition(";")
    match = re.fullmatch(r"\s*n\s*=\s*(\d+)\s*", head)
    if not match:
        raise GraphError(f"edge list must start with 'n=<k>', got {head!r}")
    n = int(match.group(1))
    edges = []
    for item in body.split(","):
        if not item.strip():
            continue
        em = _EDGE_RE.match(item)
        if not em:
            raise GraphError(f"bad edge {item.strip()!r}")
        edges.append((int(em.group(1)), int(em.group(2))))
    return SimpleGraph.from_edges(n, edges)
