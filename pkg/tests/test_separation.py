from itertools import permutations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from daginclusion.dag import build_dag, empty_dag
from daginclusion.errors import InvalidPath, NodesAdjacent, TripletNotDisjoint
from daginclusion.oracle import random_dag
from daginclusion.separation import (
    CompositeStatement,
    DependenceComplex,
    DisjointTriplet,
    active_paths,
    composite_holds,
    d_connected,
    decompose_complex,
    edge_iff_star_dependent,
    find_dependence_complex,
    is_active_path,
    moral_separated,
    nonadjacent_separator,
    plus_w_dependent,
    validate_complex,
)

from .helpers import brute_d_connected, subsets

CHAIN = build_dag("abc", [("a", "b"), ("b", "c")])
COLLIDER = build_dag("abc", [("a", "c"), ("b", "c")])
DIAMOND = build_dag("abcd", [("a", "b"), ("b", "c"), ("a", "d"), ("d", "c")])
ROPED = build_dag("abcd", [("a", "d"), ("b", "d"), ("d", "c")])


def T(A, B, C=()):
    return DisjointTriplet(A, B, C)


def test_triplet_canonical():
    assert T("b", "a", "c") == T("a", "b", "c")
    assert T({"c", "d"}, {"a"}).A == {"a"}
    with pytest.raises(TripletNotDisjoint):
        T("a", "a")
    with pytest.raises(TripletNotDisjoint):
        T("a", "b", "a")
    with pytest.raises(TripletNotDisjoint):
        T((), "b")


def test_is_active_path():
    assert not is_active_path(CHAIN, ["a", "b", "c"], {"b"})
    assert is_active_path(COLLIDER, ["a", "c", "b"], {"c"})
    assert not is_active_path(COLLIDER, ["a", "c", "b"], set())
    with pytest.raises(InvalidPath):
        is_active_path(CHAIN, ["a", "c"], set())
    with pytest.raises(InvalidPath):
        is_active_path(CHAIN, ["a", "b", "a"], set())


def test_d_connected_examples():
    assert not d_connected(CHAIN, T("a", "c", "b"))
    assert not d_connected(COLLIDER, T("a", "b"))
    assert d_connected(COLLIDER, T("a", "b", "c"))


def test_diamond_against_path_enumeration():
    expected = brute_d_connected(DIAMOND, ["b"], ["d"], {"a", "c"})
    assert expected is True
    assert d_connected(DIAMOND, T("b", "d", {"a", "c"})) is expected


def test_moral_separated_examples():
    assert moral_separated(CHAIN, T("a", "c", "b"))
    assert not moral_separated(COLLIDER, T("a", "b", "c"))
    assert moral_separated(COLLIDER, T("a", "b"))


def test_symmetry(dags3):
    for g in dags3:
        for A, B in permutations(g.nodes, 2):
            for C in subsets(set(g.nodes) - {A, B}):
                assert d_connected(g, T(A, B, C)) == d_connected(g, T(B, A, C))


@settings(max_examples=200, deadline=None)
@given(st.integers(2, 5), st.floats(0, 1), st.integers(0, 2**31), st.data())
def test_oracle_agreement_sampled(n, p, seed, data):
    g = random_dag("abcde"[:n], p, seed)
    nodes = list(g.nodes)
    slots = data.draw(st.lists(st.integers(0, 3), min_size=n, max_size=n))
    A = {x for x, s in zip(nodes, slots) if s == 1}
    B = {x for x, s in zip(nodes, slots) if s == 2}
    C = {x for x, s in zip(nodes, slots) if s == 3}
    if not A or not B:
        return
    t = T(A, B, C)
    assert d_connected(g, t) == (not moral_separated(g, t))
    assert d_connected(g, t) == brute_d_connected(g, A, B, C)


# -- dependence complexes -------------------------------------------------------


def test_complex_open_chain():
    k = find_dependence_complex(CHAIN, "a", "c", set())
    assert k.pi == ("a", "b", "c") and not k.ropes


def test_complex_with_rope():
    k = find_dependence_complex(ROPED, "a", "b", {"c"})
    assert k.pi == ("a", "d", "b")
    assert dict(k.ropes) == {"d": ("d", "c")}
    assert validate_complex(ROPED, k)


def test_complex_not_found():
    assert find_dependence_complex(CHAIN, "a", "c", {"b"}) is None


def test_validate_rejects_bad_complexes():
    g = build_dag("abcde", [("a", "d"), ("b", "d"), ("d", "e"), ("e", "c"), ("a", "c")])
    good = find_dependence_complex(g, "a", "b", {"c"})
    assert validate_complex(g, good)
    longer = DependenceComplex(("a", "d", "b"), {"d": ("d", "e", "c")}, frozenset({"c"}))
    assert validate_complex(g, longer)
    # rope ends on an endpoint of the path
    sharing = DependenceComplex(("a", "d", "b"), {"d": ("d", "b")}, frozenset({"b"}))
    assert not validate_complex(ROPED, sharing)
    blocked = DependenceComplex(("a", "b", "c"), {}, frozenset({"b"}))
    assert not validate_complex(CHAIN, blocked)
    missing_rope = DependenceComplex(("a", "d", "b"), {}, frozenset({"c"}))
    assert not validate_complex(ROPED, missing_rope)


def test_validate_rejects_rope_through_path():
    g = build_dag("abcde", [("a", "d"), ("b", "d"), ("d", "e"), ("a", "e"), ("e", "c")])
    k = DependenceComplex(("a", "d", "b"), {"d": ("d", "e", "c")}, frozenset({"c"}))
    assert validate_complex(g, k)
    k2 = DependenceComplex(("e", "d", "b"), {"d": ("d", "e", "c")}, frozenset({"c"}))
    assert not validate_complex(g, k2)


def test_ropes_need_disjointness():
    # two colliders whose shortest ropes share node r
    g = build_dag(
        "abcdrxy",
        [("a", "x"), ("b", "x"), ("b", "y"), ("d", "y"), ("x", "r"), ("y", "r"), ("r", "c"), ("y", "c")],
    )
    k = find_dependence_complex(g, "a", "d", {"c"})
    assert k is not None and validate_complex(g, k)
    used = [set(r) for r in k.ropes.values()]
    assert not any(a & b for i, a in enumerate(used) for b in used[i + 1:])


def test_decomposition_roundtrip(dags4):
    for g in dags4[::5]:
        for a, b in permutations(g.nodes, 2):
            for C in subsets(set(g.nodes) - {a, b}):
                k = find_dependence_complex(g, a, b, C)
                if k is None:
                    continue
                pi, ropes = decompose_complex(k.arrows(g), a, b)
                assert pi == k.pi and ropes == dict(k.ropes)


def test_active_paths_ordered_by_colliders():
    g = build_dag("abcdx", [("a", "x"), ("b", "x"), ("x", "c"), ("a", "d"), ("d", "b")])
    paths = list(active_paths(g, "a", "b", {"c"}))
    # the collider-free path comes before the one through x
    assert paths[:2] == [("a", "d", "b"), ("a", "x", "b")]


def test_complex_guarantees_composite_statement(dags4):
    for g in dags4[::3]:
        for a, b in permutations(g.nodes, 2):
            for C in subsets(set(g.nodes) - {a, b}):
                k = find_dependence_complex(g, a, b, C)
                if k is None:
                    continue
                S = k.interior_noncolliders(g) - {a, b}
                assert composite_holds(g, CompositeStatement(a, b, k.conditioned_nodes(), S))


# -- composite statements -------------------------------------------------------------


def test_composite_examples():
    assert composite_holds(build_dag("ab", [("a", "b")]), CompositeStatement("a", "b"))
    assert composite_holds(COLLIDER, CompositeStatement("a", "b", {"c"}))
    assert not composite_holds(CHAIN, CompositeStatement("a", "c"))


def test_composite_statement_validation():
    with pytest.raises(ValueError):
        CompositeStatement("a", "a")
    with pytest.raises(ValueError):
        CompositeStatement("a", "b", {"c"}, {"c"})


def test_star_dependence_examples():
    assert edge_iff_star_dependent(build_dag("ab", [("a", "b")]), "a", "b")
    assert not edge_iff_star_dependent(CHAIN, "a", "c")
    assert not edge_iff_star_dependent(COLLIDER, "a", "b")


def test_plus_w_examples():
    assert plus_w_dependent(COLLIDER, "a", "b", "c")
    assert not plus_w_dependent(CHAIN, "a", "c", "b")
    assert plus_w_dependent(build_dag("abw", [("a", "b")]), "a", "b", "w")


def test_plus_w_matches_brute_force(dags4):
    for g in dags4:
        for u, v, w in permutations(g.nodes, 3):
            assert plus_w_dependent(g, u, v, w) == composite_holds(g, CompositeStatement(u, v, {w}))


def test_nonadjacent_separator_examples():
    assert nonadjacent_separator(CHAIN, "a", "c") == {"b"}
    assert nonadjacent_separator(COLLIDER, "a", "b") == set()
    assert nonadjacent_separator(empty_dag("ab"), "a", "b") == set()
    with pytest.raises(NodesAdjacent):
        nonadjacent_separator(CHAIN, "a", "b")
