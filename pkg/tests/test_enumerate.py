from fractions import Fraction
from math import factorial

import pytest

from minor_density.canon import certificate
from minor_density.enumerate import ENUMERATION_LIMIT, EnumerationFilter, GuardrailError, count_graphs, enumerate_graphs
from minor_density.graph import SimpleGraph, density, is_connected, make_named, rank
from minor_density.structure import is_biconnected

from conftest import _connected, all_labelled_graphs, brute_canon, count_automorphisms, labelled_connected_count


def exactly(n, **kw):
    return list(enumerate_graphs(EnumerationFilter(max_n=n, min_n=n, **kw)))


def test_small_counts_against_labelled_dedup():
    for n in range(1, 6):
        classes = {brute_canon(n, es) for es in all_labelled_graphs(n) if _connected(n, es)}
        assert len(exactly(n, connectivity="connected")) == len(classes)
        every = {brute_canon(n, es) for es in all_labelled_graphs(n)}
        assert len(exactly(n)) == len(every)


@pytest.mark.parametrize("n", range(1, 9))
def test_connected_counts_by_orbit_counting(n):
    """Each class contributes n!/|Aut| labelled graphs; the sum must be exact."""
    graphs = exactly(n, connectivity="connected")
    assert len({certificate(g) for g in graphs}) == len(graphs)
    assert all(is_connected(g) for g in graphs)
    assert sum(factorial(n) // count_automorphisms(g) for g in graphs) == labelled_connected_count(n)


def test_examples():
    assert len(exactly(4, connectivity="connected")) == 6
    (k1,) = exactly(1, connectivity="connected")
    assert k1 == SimpleGraph.empty(1)


def _theta_certs(max_vertices):
    out = set()
    for a in range(1, 8):
        for b in range(max(a, 2), 8):
            for c in range(b, 8):
                if a + b + c - 1 <= max_vertices:
                    out.add(certificate(make_named("theta", [a, b, c])))
    return out


@pytest.mark.parametrize("max_n", [5, 6])
def test_rank_two_blocks_are_thetas(max_n):
    flt = EnumerationFilter(max_n=max_n, connectivity="biconnected", exact_rank=2)
    got = {certificate(g) for g in enumerate_graphs(flt)}
    assert got == _theta_certs(max_n)


def test_filters_hold_exactly():
    flt = EnumerationFilter(max_n=7, connectivity="connected", max_density=Fraction(3, 2), strict_density=True)
    graphs = list(enumerate_graphs(flt))
    assert graphs and all(is_connected(g) and density(g) < Fraction(3, 2) for g in graphs)
    flt = EnumerationFilter(max_n=6, connectivity="biconnected", exact_rank=3)
    assert all(is_biconnected(g) and rank(g) == 3 for g in enumerate_graphs(flt))
    flt = EnumerationFilter(max_n=6, max_edges=4)
    assert all(g.m <= 4 for g in enumerate_graphs(flt))


def test_strict_cap_prunes_nothing_it_should_keep():
    loose = EnumerationFilter(max_n=6, connectivity="connected")
    capped = EnumerationFilter(max_n=6, connectivity="connected", max_density=Fraction(3, 2), strict_density=True)
    expected = sorted(certificate(g) for g in enumerate_graphs(loose) if density(g) < Fraction(3, 2))
    assert sorted(certificate(g) for g in enumerate_graphs(capped)) == expected


def test_deterministic_order():
    flt = EnumerationFilter(max_n=6, connectivity="connected")
    a = [certificate(g) for g in enumerate_graphs(flt)]
    assert a == [certificate(g) for g in enumerate_graphs(flt)]
    assert count_graphs(flt) == len(a)


def test_guardrail():
    with pytest.raises(GuardrailError):
        count_graphs(EnumerationFilter(max_n=ENUMERATION_LIMIT + 1))
