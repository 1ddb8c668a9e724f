"""Canonical labelling of small (optionally vertex-coloured) simple graphs.

Colour refinement to an equitable partition, then individualisation of
each vertex of the first smallest non-trivial cell.  Twin vertices (equal
neighbourhoods apart from each other) are interchangeable by an
automorphism, so only one vertex per twin class is individualised.  The
canonical labelling is the leaf whose relabelled adjacency rows are
lexicographically largest.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Optional, Sequence

from .graph import SimpleGraph, bits
from .graph6 import encode_graph6


@dataclass(frozen=True, eq=False)
class CanonicalForm:
    """Certificate plus canonically relabelled graph.

    ``perm[v]`` is the canonical label of input vertex ``v``.  Equality,
    hashing and ordering use the certificate alone.
    """

    cert: bytes
    graph: SimpleGraph
    perm: tuple[int, ...]
    colors: Optional[tuple[int, ...]] = None

    def __eq__(self, other):
        return isinstance(other, CanonicalForm) and self.cert == other.cert

    def __hash__(self):
        return hash(self.cert)

    def __lt__(self, other):
        return self.cert < other.cert

    @property
    def graph6(self) -> str:
        return encode_graph6(self.graph)


def _refine(adj: tuple[int, ...], cells: list[list[int]]) -> list[list[int]]:
    while True:
        masks = []
        for c in cells:
            mk = 0
            for v in c:
                mk |= 1 << v
            masks.append(mk)
        out = []
        split = False
        for c in cells:
            if len(c) == 1:
                out.append(c)
                continue
            groups: dict[tuple[int, ...], list[int]] = {}
            for v in c:
                row = adj[v]
                groups.setdefault(tuple((row & mk).bit_count() for mk in masks), []).append(v)
            if len(groups) == 1:
                out.append(c)
                continue
            split = True
            for sig in sorted(groups):
                out.append(groups[sig])
        if not split:
            return out
        cells = out


def _canonical_order(n: int, adj: tuple[int, ...], colors: Optional[tuple[int, ...]]):
    if colors is None:
        cells = [list(range(n))]
    else:
        by_color: dict[int, list[int]] = {}
        for v, c in enumerate(colors):
            by_color.setdefault(c, []).append(v)
        cells = [by_color[c] for c in sorted(by_color)]

    best_key: Optional[tuple[int, ...]] = None
    best_order: Optional[list[int]] = None

    def search(cells: list[list[int]]) -> None:
        nonlocal best_key, best_order
        cells = _refine(adj, cells)
        if len(cells) == n:
            order = [c[0] for c in cells]
            label = [0] * n
            for i, v in enumerate(order):
                label[v] = i
            key = []
            for v in order:
                row = 0
                for u in bits(adj[v]):
                    row |= 1 << label[u]
                key.append(row)
            key = tuple(key)
            if best_key is None or key > best_key:
                best_key, best_order = key, order
            return
        idx = min((i for i, c in enumerate(cells) if len(c) > 1), key=lambda i: (len(cells[i]), i))
        cell = cells[idx]
        reps: list[int] = []
        for v in cell:
            av = adj[v]
            if any((av & ~(1 << r)) == (adj[r] & ~(1 << v)) for r in reps):
                continue
            reps.append(v)
        for v in reps:
            search(cells[:idx] + [[v], [u for u in cell if u != v]] + cells[idx + 1:])

    search(cells)
    return best_key, best_order


@lru_cache(maxsize=1 << 18)
def _canonical_cached(n: int, adj: tuple[int, ...], colors: Optional[tuple[int, ...]]) -> CanonicalForm:
    key, order = _canonical_order(n, adj, colors)
    perm = [0] * n
    for i, v in enumerate(order):
        perm[v] = i
    graph = SimpleGraph(n, key)
    cert = encode_graph6(graph).encode("ascii")
    canon_colors = None
    if colors is not None:
        canon_colors = tuple(colors[v] for v in order)
        cert += b"|" + ",".join(map(str, canon_colors)).encode("ascii")
    return CanonicalForm(cert, graph, tuple(perm), canon_colors)


def canonical_form(g: SimpleGraph, colors: Optional[Sequence[int]] = None) -> CanonicalForm:
    """Canonical form of ``g``; with ``colors`` only colour-preserving maps count."""
    return _canonical_cached(g.n, g.adj, tuple(colors) if colors is not None else None)


def certificate(g: SimpleGraph) -> bytes:
    return canonical_form(g).cert


def are_isomorphic(g: SimpleGraph, h: SimpleGraph) -> bool:
    if g.n != h.n or g.m != h.m:
        return False
    return canonical_form(g).cert == canonical_form(h).cert
