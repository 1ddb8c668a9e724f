"""Multigraphs with bonds and self-loops, and their minors.

Contraction keeps every other edge: the remaining parallel copies of the
contracted edge become loops, and loops are only ever deleted.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from itertools import permutations
from typing import Iterator, Optional, Sequence

from .enumerate import GuardrailError
from .graph import GraphError

MG_LIMIT = 7


@dataclass(frozen=True)
class Multigraph:
    n: int
    mult: tuple[tuple[int, ...], ...]
    loops: tuple[int, ...]

    def __post_init__(self):
        if self.n < 1:
            raise GraphError("a multigraph needs at least one vertex")
        if len(self.mult) != self.n or len(self.loops) != self.n:
            raise GraphError("multiplicity table does not match vertex count")
        for i, row in enumerate(self.mult):
            if len(row) != self.n or row[i] != 0:
                raise GraphError("loops belong in `loops`, not on the diagonal")
            for j, x in enumerate(row):
                if x < 0 or self.mult[j][i] != x:
                    raise GraphError("multiplicities must be symmetric and non-negative")
        if any(c < 0 for c in self.loops):
            raise GraphError("loop counts must be non-negative")

    @classmethod
    def build(cls, n: int, bonds: dict | Sequence = (), loops: dict | Sequence = ()) -> "Multigraph":
        """``bonds`` maps ``(u, v)`` to a multiplicity, or lists ``(u, v)`` once per copy."""
        table = [[0] * n for _ in range(n)]
        items = bonds.items() if isinstance(bonds, dict) else ((e, 1) for e in bonds)
        for (u, v), k in items:
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge {u}-{v} out of range")
            if u == v:
                raise GraphError("use `loops` for self-loops")
            table[u][v] += k
            table[v][u] += k
        lp = [0] * n
        litems = loops.items() if isinstance(loops, dict) else enumerate(loops)
        for v, k in litems:
            lp[v] += k
        return cls(n, tuple(map(tuple, table)), tuple(lp))

    @classmethod
    def from_simple(cls, g) -> "Multigraph":
        return cls.build(g.n, g.edges())

    @cached_property
    def m(self) -> int:
        return sum(sum(row) for row in self.mult) // 2 + sum(self.loops)

    def bonds(self) -> list[tuple[int, int, int]]:
        return [
            (u, v, self.mult[u][v])
            for u in range(self.n)
            for v in range(u + 1, self.n)
            if self.mult[u][v]
        ]

    def to_text(self) -> str:
        parts = [f"n={self.n}"]
        body = ", ".join(f"{u}-{v}:{k}" for u, v, k in self.bonds())
        if body:
            parts.append(body)
        loops = ", ".join(f"{v}:{k}" for v, k in enumerate(self.loops) if k)
        if loops:
            parts.append(f"loops {loops}")
        return "; ".join(parts)

    def __repr__(self) -> str:
        return f"Multigraph({self.to_text()!r})"


def parse_multigraph(text: str) -> Multigraph:
    """Parse ``n=<k>; u-v:mult, ...; loops v:count, ...``."""
    segments = [s.strip() for s in text.strip().split(";")]
    head = re.fullmatch(r"n\s*=\s*(\d+)", segments[0])
    if not head:
        raise GraphError(f"multigraph text must start with 'n=<k>', got {segments[0]!r}")
    n = int(head.group(1))
    bonds: dict[tuple[int, int], int] = {}
    loops: dict[int, int] = {}
    for seg in segments[1:]:
        if not seg:
            continue
        if seg.startswith("loops"):
            for item in seg[len("loops"):].split(","):
                if not item.strip():
                    continue
                lm = re.fullmatch(r"\s*(\d+)\s*:\s*(\d+)\s*", item)
                if not lm:
                    raise GraphError(f"bad loop entry {item.strip()!r}")
                v = int(lm.group(1))
                if v >= n:
                    raise GraphError(f"loop vertex {v} out of range")
                loops[v] = loops.get(v, 0) + int(lm.group(2))
            continue
        for item in seg.split(","):
            if not item.strip():
                continue
            em = re.fullmatch(r"\s*(\d+)\s*-\s*(\d+)\s*(?::\s*(\d+)\s*)?", item)
            if not em:
                raise GraphError(f"bad bond entry {item.strip()!r}")
            u, v = int(em.group(1)), int(em.group(2))
            key = (min(u, v), max(u, v))
            bonds[key] = bonds.get(key, 0) + int(em.group(3) or 1)
    return Multigraph.build(n, bonds, loops)


def bouquet(r: int) -> Multigraph:
    return Multigraph(1, ((0,),), (r,))


# -- invariants ---------------------------------------------------------------

def mg_components(g: Multigraph) -> list[list[int]]:
    seen = [False] * g.n
    out = []
    for s in range(g.n):
        if seen[s]:
            continue
        comp = [s]
        seen[s] = True
        for v in comp:
            for w in range(g.n):
                if g.mult[v][w] and not seen[w]:
                    seen[w] = True
                    comp.append(w)
        out.append(sorted(comp))
    return out


def mg_density(g: Multigraph) -> Fraction:
    return Fraction(g.m, g.n)


def mg_rank(g: Multigraph) -> int:
    return g.m - g.n + len(mg_components(g))


def mg_induced(g: Multigraph, vertices: Sequence[int]) -> Multigraph:
    keep = sorted(vertices)
    return Multigraph(
        len(keep),
        tuple(tuple(g.mult[u][v] for v in keep) for u in keep),
        tuple(g.loops[v] for v in keep),
    )


# -- canonical form -----------------------------------------------------------

@lru_cache(maxsize=1 << 16)
def _mg_canon(g: Multigraph) -> tuple[bytes, Multigraph]:
    if g.n > MG_LIMIT:
        raise GuardrailError(f"multigraph canonical form is limited to n <= {MG_LIMIT}")
    best = None
    for order in permutations(range(g.n)):
        key = (
            tuple(g.loops[v] for v in order),
            tuple(g.mult[order[i]][order[j]] for i in range(g.n) for j in range(i + 1, g.n)),
        )
        if best is None or key > best[0]:
            best = (key, order)
    key, order = best
    canon = Multigraph(
        g.n,
        tuple(tuple(g.mult[u][v] for v in order) for u in order),
        tuple(g.loops[v] for v in order),
    )
    cert = f"{g.n}|{','.join(map(str, key[0]))}|{','.join(map(str, key[1]))}".encode()
    return cert, canon


def mg_certificate(g: Multigraph) -> bytes:
    return _mg_canon(g)[0]


def mg_canonical(g: Multigraph) -> Multigraph:
    return _mg_canon(g)[1]


def mg_isomorphic(g: Multigraph, h: Multigraph) -> bool:
    return g.n == h.n and g.m == h.m and mg_certificate(g) == mg_certificate(h)


# -- minor operations ----------------------------------------------------------

def _drop(g: Multigraph, table, loops, v: int) -> Multigraph:
    keep = [i for i in range(g.n) if i != v]
    return Multigraph(
        g.n - 1,
        tuple(tuple(table[a][b] for b in keep) for a in keep),
        tuple(loops[a] for a in keep),
    )


def mg_contract(g: Multigraph, e: tuple[int, int]) -> Multigraph:
    """Contract one non-loop edge instance; other copies of it become loops."""
    u, v = e
    if u == v:
        raise GraphError("a self-loop cannot be contracted")
    if not (0 <= u < g.n and 0 <= v < g.n) or not g.mult[u][v]:
        raise GraphError(f"{u}-{v} is not an edge")
    a, b = min(u, v), max(u, v)
    table = [list(row) for row in g.mult]
    loops = list(g.loops)
    loops[a] += loops[b] + table[a][b] - 1
    for w in range(g.n):
        if w not in (a, b):
            table[a][w] += table[b][w]
            table[w][a] = table[a][w]
    table[a][b] = table[b][a] = 0
    return _drop(g, table, loops, b)


def mg_delete_edge(g: Multigraph, e: tuple[int, int]) -> Multigraph:
    """Delete one edge instance; ``(v, v)`` deletes a loop at ``v``."""
    u, v = e
    table = [list(row) for row in g.mult]
    loops = list(g.loops)
    if u == v:
        if not loops[u]:
            raise GraphError(f"no loop at {u}")
        loops[u] -= 1
    else:
        if not table[u][v]:
            raise GraphError(f"{u}-{v} is not an edge")
        table[u][v] -= 1
        table[v][u] -= 1
    return Multigraph(g.n, tuple(map(tuple, table)), tuple(loops))


def mg_delete_vertex(g: Multigraph, v: int) -> Multigraph:
    if g.n == 1:
        raise GraphError("cannot delete the last vertex")
    return _drop(g, g.mult, g.loops, v)


def mg_single_steps(g: Multigraph) -> Iterator[Multigraph]:
    for u, v, _ in g.bonds():
        yield mg_delete_edge(g, (u, v))
        yield mg_contract(g, (u, v))
    for v in range(g.n):
        if g.loops[v]:
            yield mg_delete_edge(g, (v, v))
    if g.n > 1:
        for v in range(g.n):
            yield mg_delete_vertex(g, v)


# -- densest minors -------------------------------------------------------------

def _check(g: Multigraph, limit: Optional[int]) -> None:
    limit = MG_LIMIT if limit is None else limit
    if g.n > limit:
        raise GuardrailError(f"multigraph has {g.n} vertices; the limit is {limit}")


def _key(g: Multigraph):
    # larger is better: density, then fewer vertices, then smaller certificate
    return (mg_density(g), -g.n)


def _better(a: Multigraph, b: Multigraph) -> bool:
    ka, kb = _key(a), _key(b)
    if ka != kb:
        return ka > kb
    return mg_certificate(a) < mg_certificate(b)


_MEMO: dict[bytes, Multigraph] = {}


def _brute_best(g: Multigraph) -> Multigraph:
    cert, canon = _mg_canon(g)
    hit = _MEMO.get(cert)
    if hit is not None:
        return hit
    best = canon
    for h in mg_single_steps(canon):
        cand = _brute_best(h)
        if _better(cand, best):
            best = cand
    _MEMO.setdefault(cert, best)
    return best


def mg_densest_minor_brute(g: Multigraph, limit: Optional[int] = None) -> tuple[Multigraph, Fraction]:
    """Densest minor by exhaustive closure over single operations."""
    _check(g, limit)
    best = _brute_best(g)
    return best, mg_density(best)


def mg_densest_minor(g: Multigraph, limit: Optional[int] = None) -> tuple[Multigraph, Fraction]:
    """Closed form: a bouquet of ``r`` loops for the highest component rank
    ``r >= 1``; otherwise the largest tree component."""
    _check(g, limit)
    comps = mg_components(g)
    top_rank = 0
    trees = []
    for comp in comps:
        h = mg_induced(g, comp)
        r = mg_rank(h)
        top_rank = max(top_rank, r)
        if r == 0:
            trees.append(h)
    if top_rank >= 1:
        return bouquet(top_rank), Fraction(top_rank)
    biggest = max(t.m for t in trees)
    best = min((mg_canonical(t) for t in trees if t.m == biggest), key=mg_certificate)
    return best, mg_density(best)


def mg_is_density_minimal(g: Multigraph, limit: Optional[int] = None) -> bool:
    _check(g, limit)
    own = mg_density(g)
    return all(mg_density(_brute_best(h)) < own for h in mg_single_steps(g))


def is_tree_or_bouquet(g: Multigraph) -> bool:
    if g.n == 1:
        return True
    return len(mg_components(g)) == 1 and mg_rank(g) == 0


@dataclass(frozen=True)
class MgFamilyDescriptor:
    """Multigraphs whose components are each a minor of some generator.

    ``unbounded`` marks a family whose bonds grow without limit.
    """

    generators: tuple[Multigraph, ...]
    unbounded: bool = False

    def __post_init__(self):
        if not self.generators:
            raise ValueError("a family needs at least one generator")


def mg_component_family_density(desc: MgFamilyDescriptor, limit: Optional[int] = None) -> Optional[Fraction]:
    """Limiting density of the component family; ``None`` means unbounded."""
    if desc.unbounded:
        return None
    return max(mg_densest_minor(g, limit)[1] for g in desc.generators)


def is_integer_or_superparticular(x: Fraction) -> bool:
    return x.denominator == 1 and x >= 0 or x.numerator + 1 == x.denominator


# -- enumeration ------------------------------------------------------------------

def enumerate_multigraphs(max_n: int, max_m: int, connected: bool = False) -> list[Multigraph]:
    """One canonical representative per class with ``n <= max_n``, ``m <= max_m``."""
    if max_n > MG_LIMIT:
        raise GuardrailError(f"multigraph enumeration is limited to n <= {MG_LIMIT}")
    found: dict[bytes, Multigraph] = {}
    for n in range(1, max_n + 1):
        pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
        slots = len(pairs) + n
        for counts in _compositions(slots, max_m):
            bonds = {p: k for p, k in zip(pairs, counts) if k}
            loops = counts[len(pairs):]
            g = Multigraph.build(n, bonds, loops)
            if connected and len(mg_components(g)) != 1:
                continue
            cert, canon = _mg_canon(g)
            found.setdefault(cert, canon)
    return [found[c] for c in sorted(found)]


def _compositions(slots: int, total: int):
    """All tuples of ``slots`` non-negative integers summing to at most ``total``."""
    if slots == 0:
        yield ()
        return
    for first in range(total + 1):
        for rest in _compositions(slots - 1, total - first):
            yield (first,) + rest
