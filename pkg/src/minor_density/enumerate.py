"""Isomorph-free enumeration of small graphs by edge augmentation.

Each level holds one canonical representative per isomorphism class; the
next level adds every non-edge to every representative and deduplicates by
certificate.  Connected graphs grow from the free trees, which works
because every connected graph with a cycle has a non-bridge edge whose
removal keeps it connected.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import floor
from typing import Iterator, Optional

from .canon import canonical_form
from .graph import SimpleGraph, is_connected, rank
from .structure import is_biconnected

ENUMERATION_LIMIT = 12
CONNECTIVITY = ("any", "connected", "biconnected")


class GuardrailError(ValueError):
    """A size limit was exceeded without an explicit override."""


@dataclass(frozen=True)
class EnumerationFilter:
    max_n: int
    min_n: int = 1
    max_edges: Optional[int] = None
    connectivity: str = "any"
    exact_rank: Optional[int] = None
    max_density: Optional[Fraction] = None
    strict_density: bool = False

    def __post_init__(self):
        if self.max_n > ENUMERATION_LIMIT:
            raise GuardrailError(f"enumeration is limited to n <= {ENUMERATION_LIMIT}")
        if self.min_n < 1 or self.max_n < self.min_n:
            raise ValueError("need 1 <= min_n <= max_n")
        if self.connectivity not in CONNECTIVITY:
            raise ValueError(f"connectivity must be one of {CONNECTIVITY}")

    def edge_cap(self, n: int) -> int:
        cap = n * (n - 1) // 2
        if self.max_edges is not None:
            cap = min(cap, self.max_edges)
        if self.max_density is not None:
            bound = self.max_density * n
            top = floor(bound)
            if self.strict_density and top == bound:
                top -= 1
            cap = min(cap, top)
        if self.exact_rank is not None:
            # m - n + c = r with c >= 1
            cap = min(cap, n - 1 + self.exact_rank)
        return cap

    def accepts(self, g: SimpleGraph) -> bool:
        if not self.min_n <= g.n <= self.max_n or g.m > self.edge_cap(g.n):
            return False
        if self.exact_rank is not None and rank(g) != self.exact_rank:
            return False
        if self.connectivity == "connected" and not is_connected(g):
            return False
        if self.connectivity == "biconnected" and not is_biconnected(g):
            return False
        return True


def _augment(level: dict[bytes, SimpleGraph]) -> dict[bytes, SimpleGraph]:
    out: dict[bytes, SimpleGraph] = {}
    for g in level.values():
        adj = g.adj
        for u in range(g.n):
            for v in range(u + 1, g.n):
                if adj[u] >> v & 1:
                    continue
                new = list(adj)
                new[u] |= 1 << v
                new[v] |= 1 << u
                cf = canonical_form(SimpleGraph(g.n, tuple(new)))
                if cf.cert not in out:
                    out[cf.cert] = cf.graph
    return out


def free_trees(n: int) -> dict[bytes, SimpleGraph]:
    """One canonical representative of each tree on ``n`` vertices."""
    level = {canonical_form(SimpleGraph.empty(1)).cert: SimpleGraph.empty(1)}
    for size in range(1, n):
        nxt: dict[bytes, SimpleGraph] = {}
        for t in level.values():
            for v in range(size):
                adj = list(t.adj) + [1 << v]
                adj[v] |= 1 << size
                cf = canonical_form(SimpleGraph(size + 1, tuple(adj)))
                nxt.setdefault(cf.cert, cf.graph)
        level = nxt
    return level


def _graphs_on(n: int, flt: EnumerationFilter) -> dict[bytes, SimpleGraph]:
    cap = flt.edge_cap(n)
    found: dict[bytes, SimpleGraph] = {}
    if flt.connectivity == "any":
        level = {canonical_form(SimpleGraph.empty(n)).cert: SimpleGraph.empty(n)}
        m = 0
    else:
        if cap < n - 1:
            return found
        level = free_trees(n)
        m = n - 1
    while True:
        for cert, g in level.items():
            if flt.accepts(g):
                found[cert] = g
        if m >= cap or not level:
            break
        level = _augment(level)
        m += 1
    return found


def enumerate_graphs(flt: EnumerationFilter) -> Iterator[SimpleGraph]:
    """Yield one canonical representative per class, ordered by certificate."""
    for n in range(flt.min_n, flt.max_n + 1):
        found = _graphs_on(n, flt)
        for cert in sorted(found):
            yield found[cert]


def count_graphs(flt: EnumerationFilter) -> int:
    return sum(1 for _ in enumerate_graphs(flt))
