from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from minor_density.graph import (
    GraphError,
    SimpleGraph,
    add_apex,
    components,
    density,
    disjoint_union,
    is_connected,
    make_named,
    parse_edge_list,
    parse_named,
    rank,
)
from minor_density.ratios import fmt, mediant_bound, parse_rational

from conftest import brute_isomorphic


def K(n):
    return make_named("complete", [n])


def test_density_examples():
    assert density(K(3)) == 1
    assert density(SimpleGraph.empty(1)) == 0
    assert density(parse_named("path:4")) == Fraction(3, 4)  # three edges
    assert density(K(4)) == Fraction(3, 2)


def test_rank_examples():
    assert rank(K(4)) == 3
    assert rank(parse_named("path:6")) == 0
    assert rank(parse_named("complete_bipartite:1,5")) == 0
    assert rank(parse_named("theta:1,2,3")) == 2


def test_rank_counts_components():
    g = disjoint_union([K(3), K(3), SimpleGraph.empty(1)])
    assert len(components(g)) == 3
    assert rank(g) == 2
    assert not is_connected(g)


@pytest.mark.parametrize("i", range(1, 11))
def test_family_densities(i):
    assert density(make_named("friendship", [i])) == Fraction(3 * i, 2 * i + 1)
    assert density(make_named("f_prime", [i])) == Fraction(3 * i + 2, 2 * i + 2)
    assert density(make_named("f_double_prime", [i])) == Fraction(3 * i + 4, 2 * i + 3)


def test_named_shapes():
    f2 = make_named("friendship", [2])
    assert (f2.n, f2.m, density(f2)) == (5, 6, Fraction(6, 5))
    assert brute_isomorphic(make_named("f_prime", [1]), make_named("diamond"))
    assert brute_isomorphic(make_named("theta", [2, 2, 2]), make_named("complete_bipartite", [2, 3]))
    cot = make_named("cycle_of_triangles", [3])
    assert (cot.n, cot.m) == (6, 9)
    assert make_named("cycle", [5]).m == 5


def test_theta_vertex_count():
    for a, b, c in [(1, 2, 3), (2, 2, 2), (1, 3, 3), (2, 3, 4)]:
        g = make_named("theta", [a, b, c])
        assert g.n == a + b + c - 1 and g.m == a + b + c


@pytest.mark.parametrize("bad", ["theta:1,1,2", "complete:0", "cycle:2", "friendship:0", "nosuch:1", "path:x"])
def test_named_rejects(bad):
    with pytest.raises(GraphError):
        parse_named(bad)


def test_validation():
    with pytest.raises(GraphError):
        SimpleGraph.from_edges(3, [(0, 0)])
    with pytest.raises(GraphError):
        SimpleGraph.from_edges(3, [(0, 3)])
    with pytest.raises(GraphError):
        SimpleGraph(2, (0b10, 0))
    with pytest.raises(GraphError):
        SimpleGraph.empty(0)
    with pytest.raises(GraphError):
        SimpleGraph.empty(33)


def test_edge_list_round_trip():
    g = parse_named("friendship:2")
    assert parse_edge_list(g.to_text()) == g
    assert parse_edge_list("n=3; 0-1, 1-2").m == 2
    assert parse_edge_list("n=2").m == 0
    with pytest.raises(GraphError):
        parse_edge_list("n=2; 0-5")
    with pytest.raises(GraphError):
        parse_edge_list("0-1")


def test_add_apex():
    g = add_apex(parse_named("path:3"))
    assert g.n == 4 and g.m == 5 and g.degree(3) == 3


def test_mediant_examples():
    r = mediant_bound(1, 1, 1, 1, 1, 1)
    assert (r.lhs, r.rhs, r.holds, r.equality) == (1, 1, True, True)
    r = mediant_bound(0, 1, 2, 1, 1, 1)
    assert (r.lhs, r.rhs, r.holds, r.equality) == (1, Fraction(4, 3), True, False)
    r = mediant_bound(2, 0, 0, 2, 1, 1)
    assert (r.lhs, r.rhs, r.equality) == (Fraction(1, 2), Fraction(1, 2), True)
    with pytest.raises(ValueError):
        mediant_bound(1, 1, 1, 0, 0, 0)
    with pytest.raises(ValueError):
        mediant_bound(-1, 1, 1, 1, 1, 1)


rationals = st.fractions(min_value=0, max_value=20, max_denominator=12)


@given(rationals, rationals, rationals, rationals, rationals, rationals)
def test_mediant_always_holds(a, b, c, d, e, f):
    if d + 2 * e == 0 or d + 2 * f == 0 or d + e + f == 0:
        return
    r = mediant_bound(a, b, c, d, e, f)
    assert r.lhs == (a + b + c) / (d + e + f)
    assert r.holds


def test_rational_io():
    assert fmt(Fraction(12, 9)) == "4/3"
    assert fmt(Fraction(4, 2)) == "2"
    assert parse_rational(" 3/2 ") == Fraction(3, 2)
    for bad in ["1.5", "x", "1/0", "1e3"]:
        with pytest.raises(ValueError):
            parse_rational(bad)
