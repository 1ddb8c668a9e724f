import random

from hypothesis import given, settings, strategies as st

from minor_density.canon import are_isomorphic, canonical_form, certificate
from minor_density.fans import FanSpec, build_fan
from minor_density.graph import SimpleGraph, make_named, parse_named

from conftest import brute_isomorphic


def random_graph(rng, n, p):
    return SimpleGraph.from_edges(n, [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p])


def test_examples():
    assert not are_isomorphic(make_named("cycle", [4]), parse_named("complete_bipartite:1,3"))
    assert are_isomorphic(make_named("theta", [2, 2, 2]), make_named("complete_bipartite", [2, 3]))
    f2 = build_fan(FanSpec(make_named("complete", [3]), frozenset([0]), 2))
    assert not are_isomorphic(f2, make_named("diamond"))


small = st.integers(1, 8).flatmap(
    lambda n: st.tuples(
        st.sets(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)), max_size=20),
        st.permutations(list(range(n))),
    ).map(lambda t: (SimpleGraph.from_edges(n, {(min(a, b), max(a, b)) for a, b in t[0] if a != b}), t[1]))
)


@settings(max_examples=300, deadline=None)
@given(small)
def test_relabel_invariance_and_idempotence(pair):
    g, perm = pair
    cf = canonical_form(g)
    assert certificate(g.relabel(perm)) == cf.cert
    assert canonical_form(cf.graph).cert == cf.cert
    assert canonical_form(cf.graph).graph == cf.graph
    assert g.relabel(cf.perm) == cf.graph


def test_agrees_with_permutation_oracle():
    rng = random.Random(7)
    for _ in range(400):
        n = rng.randint(1, 7)
        p = rng.random()
        g, h = random_graph(rng, n, p), random_graph(rng, n, p)
        if rng.random() < 0.3:
            perm = list(range(n))
            rng.shuffle(perm)
            h = g.relabel(perm)
        assert are_isomorphic(g, h) == brute_isomorphic(g, h)


def test_hard_regular_pairs():
    # same degree sequences, different structure
    prism = SimpleGraph.from_edges(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (0, 3), (1, 4), (2, 5)])
    k33 = make_named("complete_bipartite", [3, 3])
    assert not are_isomorphic(prism, k33)
    two_c4 = SimpleGraph.from_edges(8, [(0, 1), (1, 2), (2, 3), (0, 3), (4, 5), (5, 6), (6, 7), (4, 7)])
    assert not are_isomorphic(two_c4, make_named("cycle", [8]))
    cube = SimpleGraph.from_edges(8, [(a, b) for a in range(8) for b in range(a + 1, 8) if bin(a ^ b).count("1") == 1])
    perm = [3, 6, 0, 7, 1, 4, 2, 5]
    assert are_isomorphic(cube, cube.relabel(perm))


def test_coloured_forms_distinguish_colourings():
    p3 = parse_named("path:3")
    end = canonical_form(p3, colors=[1, 0, 0])
    mid = canonical_form(p3, colors=[0, 1, 0])
    other_end = canonical_form(p3, colors=[0, 0, 1])
    assert end.cert != mid.cert
    assert end.cert == other_end.cert
