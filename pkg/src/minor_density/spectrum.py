"""Exhaustive checks of the low-density classification and related lemmas."""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Optional

from .canon import canonical_form
from .enumerate import EnumerationFilter, GuardrailError, enumerate_graphs
from .fans import FanSpec, build_fan, densest_fan_minor, shared_edge_count
from .graph import SimpleGraph, attach_across, density, make_named, mask_connected
from .graph6 import encode_graph6
from .minors import densest_minor, densest_minor_density, is_density_minimal, is_rank_minimal
from .multigraph import (
    MgFamilyDescriptor,
    Multigraph,
    enumerate_multigraphs,
    is_integer_or_superparticular,
    is_tree_or_bouquet,
    mg_certificate,
    mg_component_family_density,
    mg_densest_minor,
    mg_densest_minor_brute,
    mg_is_density_minimal,
    mg_rank,
    mg_single_steps,
)
from .ratios import fmt

THREE_HALVES = Fraction(3, 2)
SPECTRUM_LIMIT = 10


def _guard(max_n: int, limit: int = SPECTRUM_LIMIT) -> None:
    if max_n > limit:
        raise GuardrailError(f"max_n={max_n} exceeds the limit {limit}")


@dataclass(frozen=True)
class SpectrumEntry:
    density: Fraction
    witness: SimpleGraph

    @property
    def n(self) -> int:
        return self.witness.n

    @property
    def graph6(self) -> str:
        return encode_graph6(self.witness)


@dataclass
class SpectrumReport:
    max_n: int
    cap: Optional[Fraction]
    entries: list[SpectrumEntry]

    @property
    def below_threshold(self) -> list[SpectrumEntry]:
        return [e for e in self.entries if e.density < THREE_HALVES]

    def densities(self) -> list[Fraction]:
        return sorted({e.density for e in self.entries})

    def to_csv_rows(self) -> list[list]:
        return [
            [e.density.numerator, e.density.denominator, e.graph6, e.n, e.witness.m]
            for e in self.entries
        ]


@dataclass
class VerificationReport:
    check: str
    params: dict
    passed: bool
    counterexamples: list[str] = field(default_factory=list)
    counts: dict = field(default_factory=dict)
    wall_time_ms: int = 0
    details: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "check": self.check,
            "params": self.params,
            "pass": self.passed,
            "counterexamples": self.counterexamples,
            "counts": self.counts,
            "wall_time_ms": self.wall_time_ms,
            "details": self.details,
        }


def _timed(fn):
    def wrapper(*args, **kwargs):
        start = time.perf_counter()
        report = fn(*args, **kwargs)
        report.wall_time_ms = int((time.perf_counter() - start) * 1000)
        return report

    wrapper.__name__ = fn.__name__
    wrapper.__doc__ = fn.__doc__
    return wrapper


# -- enumeration of density-minimal graphs ----------------------------------------

def loses_nothing_by_contraction(g: SimpleGraph) -> bool:
    """Some contraction keeps the density from dropping, so ``g`` is not minimal.

    Contracting an edge in no triangle gives ``(m-1)/(n-1)``, which is at
    least ``m/n`` exactly when ``m >= n``.
    """
    if g.m < g.n or g.n < 2:
        return False
    return any(not g.adj[u] & g.adj[v] for u, v in g.edges())


def enumerate_density_minimal(
    max_n: int,
    density_cap: Optional[Fraction] = THREE_HALVES,
    min_density: Optional[Fraction] = None,
    limit: int = SPECTRUM_LIMIT,
    backend: str = "closure",
    prefilter: bool = True,
) -> SpectrumReport:
    """Every density-minimal connected graph on at most ``max_n`` vertices.

    ``density_cap`` is exclusive.  Density-minimal graphs are connected
    (otherwise a component would be at least as dense), so nothing is lost.
    With ``backend="branch"`` minimality is decided independently: a proper
    minor of equal density has fewer vertices, so the tie-break would pick
    it, and ``g`` is minimal iff its densest minor is ``g`` itself.
    ``prefilter`` skips graphs that :func:`loses_nothing_by_contraction` rules out.
    """
    _guard(max_n, limit)
    flt = EnumerationFilter(
        max_n=max_n, connectivity="connected", max_density=density_cap,
        strict_density=density_cap is not None,
    )
    entries = []
    for g in enumerate_graphs(flt):
        d = density(g)
        if min_density is not None and d <= min_density:
            continue
        if prefilter and loses_nothing_by_contraction(g):
            continue
        if backend == "closure":
            minimal = is_density_minimal(g, limit=limit).verdict
        else:
            minimal = densest_minor(g, backend, limit=limit)[0] == canonical_form(g).graph
        if minimal:
            entries.append(SpectrumEntry(d, g))
    entries.sort(key=lambda e: (e.density, e.n, canonical_form(e.witness).cert))
    return SpectrumReport(max_n, density_cap, entries)


# -- the predicted low spectrum ---------------------------------------------------

def low_spectrum_families(i_max: int) -> dict[Fraction, tuple[str, int, int]]:
    """Predicted densities below 3/2 with the smallest family witness.

    Values map to ``(family, i, vertex count)`` for paths ``i/(i+1)`` and
    the friendship variants ``3i/(2i+1)``, ``(3i+2)/(2i+2)``, ``(3i+4)/(2i+3)``.
    """
    out: dict[Fraction, tuple[str, int, int]] = {}

    def offer(value: Fraction, family: str, i: int, n: int) -> None:
        if value >= THREE_HALVES:
            return
        if value not in out or n < out[value][2]:
            out[value] = (family, i, n)

    for i in range(0, i_max + 1):
        offer(Fraction(i, i + 1), "path", i, i + 1)
    for i in range(1, i_max + 1):
        offer(Fraction(3 * i, 2 * i + 1), "friendship", i, 2 * i + 1)
        offer(Fraction(3 * i + 2, 2 * i + 2), "f_prime", i, 2 * i + 2)
        offer(Fraction(3 * i + 4, 2 * i + 3), "f_double_prime", i, 2 * i + 3)
    return out


def predicted_low_spectrum(count: int, start: Fraction = Fraction(0)) -> list[Fraction]:
    """The first ``count`` predicted densities that are at least ``start``.

    Below 1 the values are the ratios ``i/(i+1)``; above 1 they accumulate
    only at 3/2, so enough terms of each family are generated to fill the
    request.
    """
    if count < 1:
        raise ValueError("count must be positive")
    i_max = count + 2
    while True:
        values = sorted(v for v in low_spectrum_families(i_max) if v >= start)
        head = values[:count]
        # the head is final once every family's next term lies beyond it
        frontier = min(
            Fraction(i_max + 1, i_max + 2),
            Fraction(3 * (i_max + 1), 2 * i_max + 3),
            Fraction(3 * i_max + 5, 2 * i_max + 4),
            Fraction(3 * i_max + 7, 2 * i_max + 5),
        )
        if len(head) == count and (frontier < start or head[-1] < frontier):
            return head
        i_max *= 2


def in_predicted_set(x: Fraction) -> bool:
    """Membership in the four families below 3/2 by solving for ``i``."""
    if x < 0 or x >= THREE_HALVES:
        return False
    p, q = x.numerator, x.denominator
    if x < 1:
        return p + 1 == q
    for (a, b), (c, d) in (((3, 0), (2, 1)), ((3, 2), (2, 2)), ((3, 4), (2, 3))):
        # x = (a i + b)/(c i + d)  =>  i = (b - x d)/(x c - a)
        den = x * c - a
        if den == 0:
            continue
        i = (b - x * d) / den
        if i.denominator == 1 and i >= 1:
            return True
    return False


def _family_graph(family: str, i: int) -> SimpleGraph:
    if family == "path":
        return make_named("path", [i + 1])
    return make_named(family, [i])


@_timed
def verify_low_density_classification(
    max_n: int,
    exclude: Iterable[Fraction] = (),
    limit: int = SPECTRUM_LIMIT,
) -> VerificationReport:
    """Enumerated density-minimal densities below 3/2 versus the predicted set.

    ``exclude`` removes values from the predicted set; it exists to show
    that the harness catches a wrong prediction.
    """
    _guard(max_n, limit)
    excluded = {Fraction(x) for x in exclude}

    def predicted(x: Fraction) -> bool:
        return in_predicted_set(x) and x not in excluded

    report = enumerate_density_minimal(max_n, THREE_HALVES, limit=limit)
    found = {e.density for e in report.entries}
    unexpected = [e for e in report.entries if not predicted(e.density)]
    counterexamples = [e.graph6 for e in unexpected]

    families = low_spectrum_families(2 * max_n)
    expected = {v: info for v, info in families.items() if info[2] <= max_n and predicted(v)}
    missing = sorted(v for v in expected if v not in found)
    for v in missing:
        family, i, _ = expected[v]
        counterexamples.append(encode_graph6(_family_graph(family, i)))

    smallest: dict[Fraction, int] = {}
    for e in report.entries:
        smallest[e.density] = min(smallest.get(e.density, e.n), e.n)
    early = [fmt(v) for v in sorted(smallest) if v in families and smallest[v] < families[v][2]]
    return VerificationReport(
        check="low-spectrum",
        params={"max_n": max_n, "excluded": [fmt(x) for x in sorted(excluded)]},
        passed=not counterexamples,
        counterexamples=counterexamples,
        counts={
            "density_minimal_graphs": len(report.entries),
            "distinct_densities": len(found),
            "expected_family_densities": len(expected),
            "unexpected_densities": len(unexpected),
            "missing_densities": len(missing),
        },
        details={
            "densities": [fmt(x) for x in sorted(found)],
            "unexpected": [fmt(e.density) for e in unexpected],
            "missing": [fmt(x) for x in missing],
            "smaller_than_family_witness": early,
        },
    )


@_timed
def verify_rank4_lemma(max_n: int, limit: int = SPECTRUM_LIMIT) -> VerificationReport:
    """Every biconnected rank-4 graph has a minor of density at least 3/2.

    Rank exactly 4 suffices: the first four ears of an open ear
    decomposition of a higher-rank biconnected graph form a biconnected
    rank-4 subgraph.
    """
    _guard(max_n, limit)
    flt = EnumerationFilter(max_n=max_n, connectivity="biconnected", exact_rank=4)
    per_n: dict[int, int] = {}
    dense_itself = 0
    counterexamples = []
    witnesses = {}
    for g in enumerate_graphs(flt):
        per_n[g.n] = per_n.get(g.n, 0) + 1
        if density(g) >= THREE_HALVES:
            dense_itself += 1
        h, d, _ = densest_minor(g, limit=limit)
        if d < THREE_HALVES:
            counterexamples.append(encode_graph6(g))
        elif g.n == max_n and len(witnesses) < 5:
            witnesses[encode_graph6(g)] = encode_graph6(h)
    return VerificationReport(
        check="rank4",
        params={"max_n": max_n},
        passed=not counterexamples,
        counterexamples=counterexamples,
        counts={"graphs": sum(per_n.values()), "dense_themselves": dense_itself,
                **{f"n{k}": v for k, v in sorted(per_n.items())}},
        details={
            "reduction": "rank above four reduces to rank four via the first four ears",
            "sample_witnesses": witnesses,
        },
    )


def rank_minimal_blocks(max_rank: int = 3) -> dict[int, list[SimpleGraph]]:
    """Rank-minimal biconnected graphs of each rank, searched up to ``2r+1`` vertices."""
    out = {}
    for r in range(1, max_rank + 1):
        flt = EnumerationFilter(max_n=2 * r + 1, connectivity="biconnected", exact_rank=r)
        out[r] = [g for g in enumerate_graphs(flt) if is_rank_minimal(g)]
    return out


def expected_blocks() -> list[SimpleGraph]:
    k3 = make_named("complete", [3])
    return [
        k3,
        make_named("diamond"),
        make_named("complete", [4]),
        make_named("book", [3]),
        # K1 joined to P4: the other 5-vertex 2-tree
        attach_across(attach_across(k3, [(1, 2)]), [(2, 3)]),
    ]


@_timed
def verify_rank_minimal_blocks() -> VerificationReport:
    found = rank_minimal_blocks(3)
    got = {canonical_form(g).cert for gs in found.values() for g in gs}
    want = {canonical_form(g).cert for g in expected_blocks()}
    extra = sorted(got - want)
    lost = sorted(want - got)
    return VerificationReport(
        check="blocks",
        params={"max_rank": 3, "vertex_bound": "2*rank+1"},
        passed=not extra and not lost,
        counterexamples=[c.decode() for c in extra + lost],
        counts={"total": len(got), **{f"rank_{r}": len(gs) for r, gs in found.items()}},
        details={f"rank_{r}": [encode_graph6(g) for g in gs] for r, gs in found.items()},
    )


def next_density(threshold: Fraction, max_n: int, limit: int = SPECTRUM_LIMIT) -> Optional[Fraction]:
    """Smallest density-minimal density above ``threshold`` on at most ``max_n`` vertices.

    A bounded search: a larger ``max_n`` may reveal values in between.
    """
    _guard(max_n, limit)
    # raise the (exclusive) cap in half steps; a hit below a cap beats anything above it
    caps: list[Optional[Fraction]] = []
    cap = THREE_HALVES
    while cap <= Fraction(max_n - 1, 2):
        if cap > threshold:
            caps.append(cap)
        cap += Fraction(1, 2)
    caps.append(None)
    for cap in caps:
        report = enumerate_density_minimal(max_n, cap, min_density=threshold, limit=limit)
        if report.entries:
            return min(e.density for e in report.entries)
    return None


# -- fan structure -------------------------------------------------------------------

def fan_specs(max_base: int = 4, max_shared: int = 2, max_fan: int = 9) -> list[FanSpec]:
    """Fan specs meeting the fan-minimality hypotheses, one per coloured class."""
    specs = []
    seen = set()
    flt = EnumerationFilter(max_n=max_base, connectivity="connected")
    for g in enumerate_graphs(flt):
        for size in range(0, max_shared + 1):
            for shared in _subsets(g.n, size):
                if len(shared) >= g.n:
                    continue
                if shared_edge_count(g, shared) != size * (size - 1) // 2:
                    continue
                outside = sum(1 << v for v in range(g.n) if v not in shared)
                if not mask_connected(g, outside):
                    continue
                if any(not g.adj[v] & outside for v in shared):
                    continue
                colors = [1 if v in shared else 0 for v in range(g.n)]
                key = canonical_form(g, colors).cert
                if key in seen:
                    continue
                seen.add(key)
                k = 1
                while True:
                    spec = FanSpec(g, frozenset(shared), k)
                    if spec.size > max_fan:
                        break
                    specs.append(spec)
                    k += 1
    return specs


def _subsets(n: int, size: int):
    from itertools import combinations

    return [frozenset(c) for c in combinations(range(n), size)]


@_timed
def verify_fan_minimality(max_base: int = 4, max_shared: int = 2, max_fan: int = 9,
                          backend: str = "closure") -> VerificationReport:
    specs = fan_specs(max_base, max_shared, max_fan)
    counterexamples = []
    for spec in specs:
        _, uniform = densest_fan_minor(spec)
        fan = build_fan(spec)
        brute = densest_minor_density(fan, backend)
        if uniform != brute:
            counterexamples.append(encode_graph6(fan))
    return VerificationReport(
        check="fan-minimality",
        params={"max_base": max_base, "max_shared": max_shared, "max_fan": max_fan, "backend": backend},
        passed=not counterexamples,
        counterexamples=counterexamples,
        counts={"specs": len(specs)},
    )


# -- multigraphs ------------------------------------------------------------------------

def random_multigraph(rng: random.Random, max_n: int = 4, max_m: int = 6) -> Multigraph:
    n = rng.randint(1, max_n)
    m = rng.randint(0, max_m)
    bonds: dict[tuple[int, int], int] = {}
    loops = [0] * n
    for _ in range(m):
        u, v = rng.randrange(n), rng.randrange(n)
        if u == v:
            loops[u] += 1
        else:
            key = (min(u, v), max(u, v))
            bonds[key] = bonds.get(key, 0) + 1
    return Multigraph.build(n, bonds, loops)


@_timed
def verify_multigraph_classification(max_n: int = 4, max_m: int = 6, samples: int = 500,
                                     seed: int = 0) -> VerificationReport:
    """Density-minimal multigraphs are trees and bouquets; closed form equals brute force."""
    connected = enumerate_multigraphs(max_n, max_m, connected=True)
    everything = enumerate_multigraphs(max_n, max_m)
    counterexamples: list[str] = []
    minimal = 0
    for g in connected:
        verdict = mg_is_density_minimal(g)
        minimal += verdict
        if verdict != is_tree_or_bouquet(g):
            counterexamples.append("classification: " + g.to_text())
        closed, brute = mg_densest_minor(g), mg_densest_minor_brute(g)
        if closed[1] != brute[1] or mg_certificate(closed[0]) != mg_certificate(brute[0]):
            counterexamples.append("densest: " + g.to_text())
    for g in everything:
        r = mg_rank(g)
        if any(mg_rank(h) > r for h in mg_single_steps(g)):
            counterexamples.append("rank: " + g.to_text())
    rng = random.Random(seed)
    for _ in range(samples):
        gens = tuple(random_multigraph(rng, max_n, max_m) for _ in range(rng.randint(1, 3)))
        value = mg_component_family_density(MgFamilyDescriptor(gens))
        if not is_integer_or_superparticular(value):
            counterexamples.append("family: " + " | ".join(g.to_text() for g in gens))
    return VerificationReport(
        check="multi",
        params={"max_n": max_n, "max_m": max_m, "samples": samples, "seed": seed},
        passed=not counterexamples,
        counterexamples=counterexamples,
        counts={"connected": len(connected), "all": len(everything), "density_minimal": minimal},
    )


CHECKS: dict[str, Callable[..., VerificationReport]] = {
    "low-spectrum": verify_low_density_classification,
    "rank4": verify_rank4_lemma,
    "blocks": verify_rank_minimal_blocks,
    "fan-minimality": verify_fan_minimality,
    "multi": verify_multigraph_classification,
}
