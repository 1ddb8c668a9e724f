"""Fans of graphs: construction, clique completion and densest fan minors."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Optional

from .canon import canonical_form
from .graph import MAX_VERTICES, GraphError, SimpleGraph, add_apex, bits, density, mask_connected
from .minors import contract_edge, delete_edge, delete_vertex, densest_minor_density


@dataclass(frozen=True)
class FanSpec:
    base: SimpleGraph
    shared: frozenset[int]
    count: int

    def __post_init__(self):
        shared = frozenset(self.shared)
        object.__setattr__(self, "shared", shared)
        if any(not 0 <= v < self.base.n for v in shared):
            raise GraphError("shared vertices must belong to the base graph")
        if len(shared) >= self.base.n:
            raise GraphError("shared set must be a proper subset of the vertices")
        if self.count < 1:
            raise GraphError("fan count must be at least 1")

    @property
    def size(self) -> int:
        s = len(self.shared)
        return self.count * (self.base.n - s) + s


def shared_edge_count(g: SimpleGraph, shared: Iterable[int]) -> int:
    mask = 0
    for v in shared:
        mask |= 1 << v
    return sum((g.adj[v] & mask).bit_count() for v in bits(mask)) // 2


def fan_counts(m: int, n: int, s: int, e_shared: int, k: int) -> tuple[int, int]:
    """Edge and vertex counts of a k-fold fan without building it."""
    return k * m - (k - 1) * e_shared, k * (n - s) + s


def build_fan(spec: FanSpec) -> SimpleGraph:
    """Shared vertices take labels ``0..s-1``; copy ``c`` of the rest follows."""
    g, k = spec.base, spec.count
    if spec.size > MAX_VERTICES:
        raise GraphError(f"fan would have {spec.size} vertices; the cap is {MAX_VERTICES}")
    shared = sorted(spec.shared)
    others = [v for v in range(g.n) if v not in spec.shared]
    s, r = len(shared), len(others)

    def label(v: int, copy: int) -> int:
        if v in spec.shared:
            return shared.index(v)
        return s + copy * r + others.index(v)

    edges = set()
    for copy in range(k):
        for u, v in g.edges():
            a, b = label(u, copy), label(v, copy)
            edges.add((min(a, b), max(a, b)))
    return SimpleGraph.from_edges(spec.size, sorted(edges))


def _mask(vertices: Iterable[int]) -> int:
    out = 0
    for v in vertices:
        out |= 1 << v
    return out


def _check_fan_hypotheses(g: SimpleGraph, shared: frozenset[int]) -> None:
    outside = _mask(v for v in range(g.n) if v not in shared)
    if not outside:
        raise GraphError("shared set must be a proper subset of the vertices")
    if not mask_connected(g, outside):
        raise GraphError("base graph minus the shared set must be connected")
    for v in shared:
        if not g.adj[v] & outside:
            raise GraphError(f"shared vertex {v} has no neighbour outside the shared set")


def max_clique(g: SimpleGraph, vertices: Iterable[int]) -> frozenset[int]:
    """Lexicographically first maximum clique inside ``vertices``."""
    pool = sorted(vertices)
    for size in range(len(pool), 0, -1):
        for combo in combinations(pool, size):
            if all(g.has_edge(u, v) for u, v in combinations(combo, 2)):
                return frozenset(combo)
    return frozenset()


def clique_completion(g: SimpleGraph, shared: Iterable[int]) -> tuple[SimpleGraph, int]:
    """``g`` with ``shared`` made a clique, and how many fan copies that costs.

    Contracting one copy onto each shared vertex outside a maximum clique of
    the shared set supplies the missing edges, so ``c = |S| - |K|``.
    """
    shared = frozenset(shared)
    _check_fan_hypotheses(g, shared)
    clique = max_clique(g, shared)
    extra = [(u, v) for u, v in combinations(sorted(shared), 2) if not g.has_edge(u, v)]
    completed = SimpleGraph.from_edges(g.n, g.edges() + extra)
    return completed, len(shared) - len(clique)


# -- tracked minors -----------------------------------------------------------

@dataclass(frozen=True)
class TrackedMinor:
    minor: SimpleGraph
    shared_image: frozenset[int]

    def fan_density(self, k: int) -> Fraction:
        s = len(self.shared_image)
        edges, verts = fan_counts(self.minor.m, self.minor.n, s, shared_edge_count(self.minor, self.shared_image), k)
        return Fraction(edges, verts)


def _tracked_key(g: SimpleGraph, smask: int):
    colors = [1 if smask >> v & 1 else 0 for v in range(g.n)]
    cf = canonical_form(g, colors=colors)
    canon_mask = _mask(cf.perm[v] for v in bits(smask))
    return cf.cert, cf.graph, canon_mask


def _tracked_steps(g: SimpleGraph, smask: int):
    for u, v in g.edges():
        yield delete_edge(g, (u, v)), smask
    if g.n > 1:
        for v in range(g.n):
            yield delete_vertex(g, v), _squeeze(smask, v)
        for u, v in g.edges():
            merged = smask
            if smask >> v & 1:
                merged |= 1 << u
            yield contract_edge(g, (u, v)), _squeeze(merged, v)


def _squeeze(mask: int, v: int) -> int:
    low = (1 << v) - 1
    return (mask & low) | ((mask >> (v + 1)) << v)


def tracked_minors(g: SimpleGraph, shared: Iterable[int]) -> list[TrackedMinor]:
    """Every minor of ``g`` with the image of ``shared``, up to coloured isomorphism."""
    cert, cg, cmask = _tracked_key(g, _mask(shared))
    seen = {cert: (cg, cmask)}
    stack = [cert]
    while stack:
        graph, smask = seen[stack.pop()]
        for h, hmask in _tracked_steps(graph, smask):
            key, hg, hm = _tracked_key(h, hmask)
            if key not in seen:
                seen[key] = (hg, hm)
                stack.append(key)
    return [TrackedMinor(seen[c][0], frozenset(bits(seen[c][1]))) for c in sorted(seen)]


def densest_fan_minor(spec: FanSpec) -> tuple[TrackedMinor, Fraction]:
    """Best uniform fan ``Fan(G', S', k)`` over tracked minors of the base.

    Scores come from the count formula, so ``k`` is not limited by the
    vertex cap.  Ties prefer fewer fan vertices.
    """
    g, shared = spec.base, spec.shared
    if shared_edge_count(g, shared) != len(shared) * (len(shared) - 1) // 2:
        raise GraphError("shared set must induce a clique")
    _check_fan_hypotheses(g, shared)
    best: Optional[tuple[Fraction, int, TrackedMinor]] = None
    for tm in tracked_minors(g, shared):
        value = tm.fan_density(spec.count)
        s = len(tm.shared_image)
        verts = spec.count * (tm.minor.n - s) + s
        if best is None or value > best[0] or (value == best[0] and verts < best[1]):
            best = (value, verts, tm)
    return best[2], best[0]


def fan_minimality_holds(spec: FanSpec, backend: str = "closure") -> bool:
    """Densest uniform fan equals the densest minor of the built fan."""
    _, uniform = densest_fan_minor(spec)
    return uniform == densest_minor_density(build_fan(spec), backend)


# -- apex fans and component families ----------------------------------------

def apex_fan(g: SimpleGraph, k: int) -> tuple[SimpleGraph, Fraction]:
    """``Fan(g + apex, {apex}, k)`` and its predicted density ``(m+n)k/(nk+1)``."""
    if k < 1:
        raise GraphError("k must be at least 1")
    with_apex = add_apex(g)
    fan = build_fan(FanSpec(with_apex, frozenset([g.n]), k))
    predicted = Fraction((g.m + g.n) * k, g.n * k + 1)
    return fan, predicted


def component_family_limiting_density(g: SimpleGraph, limit: Optional[int] = None) -> Fraction:
    """Limiting density of the graphs whose components are all minors of ``g``."""
    return densest_minor_density(g, limit=limit)


def fan_density(spec: FanSpec) -> Fraction:
    return density(build_fan(spec))
