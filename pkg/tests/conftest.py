"""Independent oracles used across the test suite.

Nothing here calls the package's canonical labelling or minor search;
everything is plain brute force over permutations and edge sets.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations, permutations
from pathlib import Path

import pytest

from minor_density.graph import SimpleGraph

ROOT = Path(__file__).resolve().parent.parent
SCHEMAS = ROOT / "docs" / "schemas"


def edge_set(g: SimpleGraph) -> frozenset:
    return frozenset(frozenset(e) for e in g.edges())


def brute_canon(n: int, edges) -> tuple:
    """Lexicographically smallest sorted edge list over all relabellings."""
    edges = [tuple(e) for e in edges]
    best = None
    for p in permutations(range(n)):
        key = tuple(sorted(tuple(sorted((p[u], p[v]))) for u, v in edges))
        if best is None or key < best:
            best = key
    return (n, best)


def brute_isomorphic(g: SimpleGraph, h: SimpleGraph) -> bool:
    if g.n != h.n or g.m != h.m:
        return False
    target = edge_set(h)
    for p in permutations(range(g.n)):
        if frozenset(frozenset((p[u], p[v])) for u, v in g.edges()) == target:
            return True
    return False


def count_automorphisms(g: SimpleGraph) -> int:
    """Backtracking count of adjacency-preserving bijections."""
    n = g.n
    nbrs = [set(g.neighbors(v)) for v in range(n)]
    image = [-1] * n
    used = [False] * n
    total = 0

    def rec(v: int) -> None:
        nonlocal total
        if v == n:
            total += 1
            return
        for w in range(n):
            if used[w] or len(nbrs[w]) != len(nbrs[v]):
                continue
            if all((image[u] in nbrs[w]) == (u in nbrs[v]) for u in range(v)):
                image[v], used[w] = w, True
                rec(v + 1)
                used[w] = False
        image[v] = -1

    rec(0)
    return total


def labelled_connected_count(n: int) -> int:
    """Labelled connected graphs on n vertices, by the standard recurrence."""
    from math import comb

    conn = [0, 1]
    for k in range(2, n + 1):
        total = 2 ** comb(k, 2)
        for j in range(1, k):
            total -= comb(k - 1, j - 1) * conn[j] * 2 ** comb(k - j, 2)
        conn.append(total)
    return conn[n]


def _connected(n: int, edges) -> bool:
    adj = {v: set() for v in range(n)}
    for u, v in edges:
        adj[u].add(v)
        adj[v].add(u)
    seen, stack = {0}, [0]
    while stack:
        for w in adj[stack.pop()]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == n


def brute_minors(g: SimpleGraph) -> set:
    """Every minor of ``g`` as a brute canonical key, by exhaustive operations."""
    start = (g.n, frozenset(tuple(e) for e in g.edges()))
    seen = {brute_canon(*start): start}
    stack = [start]
    while stack:
        n, edges = stack.pop()
        steps = []
        for e in edges:
            steps.append((n, edges - {e}))
        if n > 1:
            for v in range(n):
                def shift(x, v=v):
                    return x - 1 if x > v else x
                steps.append((n - 1, frozenset((shift(a), shift(b)) for a, b in edges if v not in (a, b))))
            for u, v in edges:
                new = set()
                for a, b in edges:
                    a, b = (u if a == v else a), (u if b == v else b)
                    if a != b:
                        a, b = (a - 1 if a > v else a), (b - 1 if b > v else b)
                        new.add((min(a, b), max(a, b)))
                steps.append((n - 1, frozenset(new)))
        for step in steps:
            key = brute_canon(*step)
            if key not in seen:
                seen[key] = step
                stack.append(step)
    return set(seen)


def brute_densest_density(g: SimpleGraph) -> Fraction:
    return max(Fraction(len(k[1]), k[0]) for k in brute_minors(g))


def all_labelled_graphs(n: int):
    pairs = list(combinations(range(n), 2))
    for mask in range(1 << len(pairs)):
        yield [pairs[i] for i in range(len(pairs)) if mask >> i & 1]


@pytest.fixture(scope="session")
def schemas():
    import json

    return {p.name.split(".")[0]: json.loads(p.read_text()) for p in SCHEMAS.glob("*.schema.json")}


# -- acceptance summary ----------------------------------------------------------

ACCEPTANCE: dict[str, tuple[str, str]] = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    label = getattr(item.function, "criterion", None)
    if label is None or report.when != "call":
        return
    seconds = f"{report.duration:.1f}s"
    ACCEPTANCE[label] = ("PASS" if report.passed else "FAIL", seconds)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for label in sorted(ACCEPTANCE, key=lambda s: (int(s.split()[0].rstrip("ab")), s)):
        status, seconds = ACCEPTANCE[label]
        terminalreporter.write_line(f"{status}  {label}  ({seconds})")
