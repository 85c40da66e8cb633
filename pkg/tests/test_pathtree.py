from fractions import Fraction

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import connected_unit_graphs, weighted_graphs
from matchroots.classify import SignClass
from matchroots.exact import AlgebraicNumber, compare
from matchroots.graph import WeightedGraph, complete_graph, cycle_graph, hamiltonian_path, path_graph, star_graph
from matchroots.matchpoly import PreconditionError, matching_polynomial, roots
from matchroots.pathtree import (
    PathTreeTooLarge,
    annotate_signs,
    build_path_tree,
    chain_polynomials,
    classes_along,
    count_paths_from,
    godsil_identity_check,
    path_multiplicity_drop,
    plus_count,
    plus_sign_monotonicity_check,
    render_tree,
    sample_times,
    sylvester_count,
    tree_polynomials,
    tree_to_json,
    zero_path_check,
    zeros_minus_poles_check,
)

P3 = path_graph(3)


def at(value) -> AlgebraicNumber:
    return AlgebraicNumber.from_rational(value)


def nx_path_count(g: WeightedGraph, i: int) -> int:
    h = nx.Graph()
    h.add_nodes_from(g.vertices)
    h.add_edges_from((u, v) for u, v, _ in g.edges())
    return 1 + sum(len(list(nx.all_simple_paths(h, i, j))) for j in g.vertices if j != i)


# -- trees ---------------------------------------------------------------------------------

def test_tree_of_a_path_is_the_path():
    t = build_path_tree(P3, 1)
    assert t.paths == [(1,), (1, 2), (1, 2, 3)]
    assert t.as_graph() == P3


def test_k3_tree_has_five_nodes():
    t = build_path_tree(complete_graph(3), 1)
    assert sorted(t.paths) == [(1,), (1, 2), (1, 2, 3), (1, 3), (1, 3, 2)]
    assert render_tree(t).count("\n") + 1 == 5


def test_single_vertex_tree():
    t = build_path_tree(WeightedGraph({1: 3}), 1)
    assert len(t) == 1 and render_tree(t) == "1"


def test_c4_tree_size_matches_path_enumeration():
    c4 = cycle_graph(4)
    assert len(build_path_tree(c4, 1)) == nx_path_count(c4, 1) == 7
    assert godsil_identity_check(c4, 1).ok


def test_tree_guard():
    with pytest.raises(PathTreeTooLarge):
        build_path_tree(complete_graph(6), 1, max_nodes=100)
    assert issubclass(PathTreeTooLarge, PreconditionError)


def test_parents_are_prefixes():
    t = build_path_tree(complete_graph(4), 2)
    for k in range(1, len(t)):
        assert t.paths[t.parent[k]] == t.paths[k][:-1]
        assert k in t.children[t.parent[k]]


@pytest.mark.parametrize("g", connected_unit_graphs(5))
def test_node_count_is_path_count(g):
    assert count_paths_from(g, 1) == nx_path_count(g, 1) == len(build_path_tree(g, 1))


def test_tree_polynomials_match_materialized_tree():
    g = complete_graph(4)
    t = build_path_tree(g, 1)
    mu_t, mu_t_minus = tree_polynomials(g, 1)
    tg = t.as_graph()
    from matchroots.matchpoly import mu_minus

    assert mu_t == matching_polynomial(tg)
    assert mu_t_minus == mu_minus(tg, 1)


def test_godsil_examples():
    assert godsil_identity_check(complete_graph(3), 1).ok
    assert godsil_identity_check(star_graph(4), 2).ok


@settings(max_examples=40, deadline=None)
@given(weighted_graphs(max_n=6), st.data())
def test_godsil_random(g, data):
    i = data.draw(st.sampled_from(g.vertices))
    assert godsil_identity_check(g, i).ok


# -- sign annotation ----------------------------------------------------------------------------

def test_annotation_p3_at_zero():
    ann = annotate_signs(P3, 1, at(0))
    assert ann.classes == [SignClass.ZERO, SignClass.INF, SignClass.ZERO]
    assert ann.render() == "1 0\n  1-2 inf\n    1-2-3 0"
    doc = ann.to_json()
    assert doc == {"path": [1], "class": "zero",
                   "children": [{"path": [1, 2], "class": "inf",
                                 "children": [{"path": [1, 2, 3], "class": "zero", "children": []}]}]}


def test_annotation_far_left_and_right():
    g = complete_graph(3)
    assert set(annotate_signs(g, 1, at(-10)).classes) == {SignClass.NEG}
    assert set(annotate_signs(g, 1, at(10)).classes) == {SignClass.POS}


def test_tree_json_without_classes():
    doc = tree_to_json(build_path_tree(path_graph(2), 1))
    assert doc == {"path": [1], "children": [{"path": [1, 2], "children": []}]}


@settings(max_examples=25, deadline=None)
@given(weighted_graphs(max_n=5, connected=True), st.data())
def test_zero_child_has_infinite_parent(g, data):
    i = data.draw(st.sampled_from(g.vertices))
    for theta in roots(g):
        annotate_signs(g, i, theta)  # raises on a breach


# -- 0-paths ------------------------------------------------------------------------------------

def test_zero_path_examples():
    assert zero_path_check(P3, (1, 2, 3), at(0))
    assert not zero_path_check(P3, (2,), at(0))
    assert path_multiplicity_drop(P3, (2,), at(0)) == -1


def test_zero_path_rejects_non_paths():
    with pytest.raises(PreconditionError):
        zero_path_check(P3, (1, 3), at(0))


@settings(max_examples=30, deadline=None)
@given(weighted_graphs(max_n=6, connected=True))
def test_hamiltonian_paths_are_zero_paths_at_every_root(g):
    c = hamiltonian_path(g)
    if c is None:
        return
    for theta in roots(g):
        assert zero_path_check(g, c, theta)
        assert zeros_minus_poles_check(g, c, theta).ok


@settings(max_examples=30, deadline=None)
@given(weighted_graphs(min_n=2, max_n=6), st.data())
def test_zeros_minus_poles_on_random_paths(g, data):
    i = data.draw(st.sampled_from(g.vertices))
    t = build_path_tree(g, i)
    c = data.draw(st.sampled_from(t.paths))
    for theta in roots(g):
        assert zeros_minus_poles_check(g, c, theta).ok
        assert len(classes_along(g, c, theta)) == len(c)


# -- Sylvester ------------------------------------------------------------------------------------

def test_sylvester_p3_at_six_fifths():
    # mu(G)(6/5) = -84/125, mu(G-1)(6/5) = 11/25, mu(G-1,2)(6/5) = 6/5
    assert matching_polynomial(P3)(Fraction(6, 5)) == Fraction(-84, 125)
    s = sylvester_count(P3, (1, 2, 3), Fraction(6, 5))
    assert (s.forward, s.reverse, s.roots_below) == (2, 2, 2) and s.verdict.ok


def test_sylvester_extremes():
    g = complete_graph(4)
    c = hamiltonian_path(g)
    assert sylvester_count(g, c, -10).forward == 0
    assert sylvester_count(g, c, 10).forward == 4


def test_sylvester_errors():
    with pytest.raises(PreconditionError, match="degenerate"):
        sylvester_count(P3, (1, 2, 3), 0)
    with pytest.raises(PreconditionError, match="Hamiltonian"):
        sylvester_count(P3, (1, 2), 1)


def test_plus_count_examples():
    assert sample_times(P3) == [-3, -1, 1, 4]
    # off the roots of every polynomial in the chain (here +-1 as well)
    grid = sample_times(P3, chain_polynomials(P3, (1, 2, 3)))
    assert grid == [-3, Fraction(-1, 2), Fraction(1, 2), 4]
    assert [plus_count(P3, (1, 2, 3), t) for t in grid] == [0, 1, 2, 3]
    assert plus_sign_monotonicity_check(P3, (1, 2, 3), grid).ok
    assert plus_sign_monotonicity_check(P3, (1,), sample_times(P3, chain_polynomials(P3, (1,)))).ok
    with pytest.raises(PreconditionError, match="degenerate"):
        plus_sign_monotonicity_check(P3, (1,), [1])
    assert plus_sign_monotonicity_check(P3, (1, 2, 3), []).ok


def test_plus_count_can_drop_off_zero_paths():
    # [b] in P3 is not a 0-path at 0; its count falls from 1 to 0 there
    assert plus_count(P3, (2,), Fraction(-1, 2)) == 1
    assert plus_count(P3, (2,), Fraction(1, 2)) == 0
    assert plus_sign_monotonicity_check(P3, (2,), sample_times(P3)).ok


@settings(max_examples=30, deadline=None)
@given(weighted_graphs(max_n=6, connected=True))
def test_sylvester_random(g):
    c = hamiltonian_path(g)
    if c is None:
        return
    for t in sample_times(g, chain_polynomials(g, c)):
        s = sylvester_count(g, c, t)
        assert s.verdict.ok, s.verdict.details
    assert all(compare(a, b.lo) <= 0 for a, b in zip(roots(g), roots(g)[1:]))


def test_tree_ratio_agrees_with_full_products():
    from matchroots.exact import gcd_poly
    from matchroots.pathtree import tree_ratio

    for g in [complete_graph(4), cycle_graph(5), star_graph(3)]:
        for i in g.vertices:
            num, den = tree_ratio(g, i)
            mu_t, mu_t_root = tree_polynomials(g, i)
            assert (num * mu_t_root - den * mu_t).is_zero()
            assert gcd_poly(num, den).degree == 0 and den.degree <= g.n


def test_large_tree_uses_the_ratio_form():
    v = godsil_identity_check(complete_graph(7), 1)
    assert v.ok and v.details["form"] == "ratio"
    assert godsil_identity_check(path_graph(4), 1).details["form"] == "product"
