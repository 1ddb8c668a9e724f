"""Block decomposition, biconnectivity and open ear decompositions."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .graph import Edge, GraphError, SimpleGraph, is_connected, rank


@dataclass(frozen=True)
class BlockDecomposition:
    # isolated vertices appear as single-vertex blocks
    blocks: tuple[frozenset[int], ...]
    articulation_points: frozenset[int]


@dataclass(frozen=True)
class EarDecomposition:
    """Ears as vertex sequences; the first is closed (``ears[0][0] == ears[0][-1]``)."""

    ears: tuple[tuple[int, ...], ...]

    def edge_sets(self) -> list[list[Edge]]:
        return [[_key(a, b) for a, b in zip(ear, ear[1:])] for ear in self.ears]


def _key(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


def blocks(g: SimpleGraph) -> BlockDecomposition:
    """Hopcroft-Tarjan biconnected components, iterative DFS with an edge stack."""
    disc = [-1] * g.n
    low = [0] * g.n
    found: list[frozenset[int]] = []
    cut: set[int] = set()
    counter = 0
    for root in range(g.n):
        if disc[root] != -1:
            continue
        disc[root] = low[root] = counter
        counter += 1
        if not g.adj[root]:
            found.append(frozenset([root]))
            continue
        root_children = 0
        edge_stack: list[Edge] = []
        stack = [(root, -1, iter(g.neighbors(root)))]
        while stack:
            v, parent, it = stack[-1]
            advanced = False
            for w in it:
                if disc[w] == -1:
                    edge_stack.append((v, w))
                    disc[w] = low[w] = counter
                    counter += 1
                    if v == root:
                        root_children += 1
                    stack.append((w, v, iter(g.neighbors(w))))
                    advanced = True
                    break
                if w != parent and disc[w] < disc[v]:
                    edge_stack.append((v, w))
                    low[v] = min(low[v], disc[w])
            if advanced:
                continue
            stack.pop()
            if parent == -1:
                continue
            low[parent] = min(low[parent], low[v])
            if low[v] >= disc[parent]:
                if parent != root:
                    cut.add(parent)
                comp: set[int] = set()
                while True:
                    a, b = edge_stack.pop()
                    comp.update((a, b))
                    if (a, b) == (parent, v):
                        break
                found.append(frozenset(comp))
        if root_children > 1:
            cut.add(root)
    found.sort(key=lambda b: (min(b), sorted(b)))
    return BlockDecomposition(tuple(found), frozenset(cut))


def is_biconnected(g: SimpleGraph) -> bool:
    """2-connected with at least three vertices (so K1 and K2 are excluded)."""
    if g.n < 3 or not is_connected(g):
        return False
    return not blocks(g).articulation_points


def ear_decomposition(g: SimpleGraph) -> EarDecomposition:
    """Open ear decomposition of a biconnected graph; ``rank(g)`` ears."""
    if not is_biconnected(g):
        raise GraphError("ear decomposition needs a biconnected graph")
    used: set[Edge] = set()
    u0 = 0
    v0 = g.neighbors(0)[0]
    path = _shortest_path(g, v0, lambda x: x == u0, banned=set(), skip_edge=(u0, v0))
    first = (u0,) + tuple(path)
    ears = [first]
    covered = set(first)
    used.update(_key(a, b) for a, b in zip(first, first[1:]))
    total = g.m
    while len(used) < total:
        ear = None
        for u in sorted(covered):
            for x in g.neighbors(u):
                if _key(u, x) in used:
                    continue
                if x in covered:
                    ear = (u, x)
                else:
                    tail = _shortest_path(
                        g, x, lambda y, u=u: y in covered and y != u, banned={u}, inside=covered
                    )
                    ear = (u,) + tuple(tail)
                break
            if ear:
                break
        assert ear is not None, "biconnected graph must admit another ear"
        ears.append(ear)
        covered.update(ear)
        used.update(_key(a, b) for a, b in zip(ear, ear[1:]))
    return EarDecomposition(tuple(ears))


def _shortest_path(g, start, is_target, banned, skip_edge=None, inside=frozenset()):
    """BFS path from ``start`` to the first vertex satisfying ``is_target``.

    Interior vertices avoid ``banned`` and ``inside``; a target may lie in
    ``inside``.
    """
    prev = {start: None}
    queue = deque([start])
    while queue:
        v = queue.popleft()
        for w in g.neighbors(v):
            if w in prev or w in banned:
                continue
            if skip_edge and {v, w} == set(skip_edge):
                continue
            if is_target(w):
                out = [w, v]
                while prev[out[-1]] is not None:
                    out.append(prev[out[-1]])
                return out[::-1]
            if w in inside:
                continue
            prev[w] = v
            queue.append(w)
    raise GraphError("no path found; graph is not biconnected")


def validate_ear_decomposition(g: SimpleGraph, dec: EarDecomposition) -> bool:
    """Independent check: a closed first ear, open later ears, edges partitioned."""
    if not dec.ears:
        return False
    seen: set[Edge] = set()
    covered: set[int] = set()
    for i, ear in enumerate(dec.ears):
        if i == 0:
            if len(ear) < 4 or ear[0] != ear[-1] or len(set(ear[:-1])) != len(ear) - 1:
                return False
        else:
            if len(ear) < 2 or ear[0] == ear[-1] or len(set(ear)) != len(ear):
                return False
            if ear[0] not in covered or ear[-1] not in covered:
                return False
            if any(v in covered for v in ear[1:-1]):
                return False
        for a, b in zip(ear, ear[1:]):
            e = _key(a, b)
            if not g.has_edge(*e) or e in seen:
                return False
            seen.add(e)
        covered.update(ear)
    return len(seen) == g.m and len(dec.ears) == rank(g)
