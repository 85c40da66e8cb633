from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

import sympy_oracle
from conftest import connected_unit_graphs, weighted_graphs
from matchroots.classify import (
    InvariantViolation,
    SignClass,
    alpha_class,
    classes,
    compare_values,
    decompose,
    frontier_inside_infinity_check,
    gallai_check,
    internal_frontier_checks,
    matched_condition_check,
    multiplicity_formula_check,
    sign_change_at,
    sign_table_check,
    stability2_check,
    stability_check,
    values_equal,
)
from matchroots.exact import AlgebraicNumber, Interval, Polynomial, compare
from matchroots.graph import WeightedGraph, complete_graph, path_graph, star_graph
from matchroots.matchpoly import PreconditionError, matching_polynomial, roots

Z, I, PLUS, MINUS = SignClass.ZERO, SignClass.INF, SignClass.POS, SignClass.NEG
P3, K2, K3, K13 = path_graph(3), path_graph(2), complete_graph(3), star_graph(3)


def at(value) -> AlgebraicNumber:
    return AlgebraicNumber.from_rational(value)


def sqrt2() -> AlgebraicNumber:
    return AlgebraicNumber(Polynomial([-2, 0, 1]), Interval(Fraction(1), Fraction(2)))


def root_at(g, value) -> AlgebraicNumber:
    return next(t for t in roots(g) if compare(t, value) == 0)


# -- alpha_class and decompose examples -----------------------------------------------------

def test_alpha_class_examples():
    assert alpha_class(P3, 1, at(0)) is Z
    assert alpha_class(P3, 2, at(0)) is I
    assert alpha_class(K2, 1, sqrt2()) is PLUS


def test_examples_agree_with_sympy_oracle():
    cases = [(P3, 0), (K13, 0), (K3, 0), (K2, sympy.sqrt(2)), (P3, sympy.sqrt(2)), (K2, 5)]
    for g, theta in cases:
        expected = sympy_oracle.classes(g, sympy.sympify(theta))
        t = sqrt2() if theta == sympy.sqrt(2) else at(int(theta))
        assert {v: c.value for v, c in classes(g, t).items()} == expected


def test_decompose_k13():
    dec = decompose(K13, at(0))
    assert dec.D == {2, 3, 4} and dec.A == {1} and dec.m == 2
    assert dec.N_minus == dec.N_plus == dec.P == frozenset()
    assert sorted(map(sorted, dec.critical_components)) == [[2], [3], [4]]


def test_decompose_k3_and_rational():
    dec = decompose(K3, at(0))
    assert dec.D == {1, 2, 3} and dec.A == frozenset() and dec.m == 1
    dec = decompose(K2, at(5))
    assert dec.D == frozenset() and dec.N_plus == {1, 2} and dec.m == 0


def test_decompose_p3():
    dec = decompose(P3, at(0))
    assert dec.D == {1, 3} and dec.A == {2} and dec.m == 1


def test_decompose_json_schema():
    doc = decompose(P3, at(0)).to_json()
    assert set(doc) == {"theta", "m", "classes", "D", "A", "N_minus", "N_plus", "P", "critical_components"}
    assert doc["classes"] == {"1": "zero", "2": "inf", "3": "zero"}
    assert doc["theta"]["witness"] == ["0", "1"]
    assert doc["critical_components"] == [[1], [3]]


def test_decompose_rejects_empty():
    with pytest.raises(PreconditionError):
        decompose(WeightedGraph({}), at(0))


def test_sign_change_order_at_zero_and_pole():
    # P3 at 0: endpoints are zeros of alpha, the middle is a pole
    left, right = sign_change_at(P3, 1, at(0))
    assert (left, right) == (MINUS, PLUS)
    left, right = sign_change_at(P3, 2, at(0))
    assert (left, right) == (PLUS, MINUS)


# -- structure theorems ---------------------------------------------------------------------

def test_stability_examples():
    assert stability_check(K13, at(0), 1).ok
    assert stability_check(P3, at(0), 2).ok
    with pytest.raises(PreconditionError, match="vertex not in frontier of zero set"):
        stability_check(K2, root_at(K2, 1), 1)


def test_stability2_examples():
    v = stability2_check(K13, at(0), 1, 0, {2: -2, 3: -2, 4: -2})
    assert v.status == "pass"
    assert decompose(K13.with_vertex_weights(1, 0, {2: -2, 3: -2, 4: -2}), at(0)).D == {2, 3, 4}
    v = stability2_check(K13, at(0), 1, 0, {2: 0, 3: 0})
    assert v.status == "hypothesis-not-satisfied"
    assert stability2_check(K13, at(0), 1, 0, {}).status == "pass"


def test_gallai_examples():
    assert gallai_check(K3, at(0)).ok
    assert gallai_check(P3, sqrt2()).ok
    with pytest.raises(PreconditionError):
        gallai_check(K13, at(0))


def test_multiplicity_formula_examples():
    assert multiplicity_formula_check(K13, at(0)).ok
    assert multiplicity_formula_check(K3, at(0)).ok
    assert multiplicity_formula_check(K13, at(Fraction(1, 3))).ok


def test_matched_condition_examples():
    assert matched_condition_check(K13, at(0)).ok
    assert matched_condition_check(P3, at(0)).ok
    assert matched_condition_check(K3, at(0)).ok
    with pytest.raises(PreconditionError):
        matched_condition_check(K3, at(1))


def test_sign_table_examples():
    assert sign_table_check(P3, at(0), 1, 3).ok
    assert sign_table_check(K2, at(0), 1, 2).ok
    apart = WeightedGraph.unit(3, [(1, 2)])
    assert sign_table_check(apart, at(0), 1, 3).ok


def test_internal_frontier_examples():
    assert internal_frontier_checks(K13, at(0)).ok
    assert internal_frontier_checks(K13, at(Fraction(7, 5))).ok
    assert internal_frontier_checks(P3, at(0)).ok
    assert frontier_inside_infinity_check(P3, at(0)).ok


# -- value comparisons ------------------------------------------------------------------------

def test_values_equal_and_compare():
    x = Polynomial.x()
    one = Polynomial([1])
    theta = at(0)
    # x / 1 and x^2 / x agree (both vanish); 1 / x is infinite
    assert values_equal((x, one), (x * x, x), theta)
    assert not values_equal((x, one), (one, x), theta)
    # (x + 1) / 1 versus 2 / 1 at 0: 1 < 2
    assert compare_values((x + 1, one), (Polynomial([2]), one), theta) == -1
    assert values_equal((x + 1, one), (Polynomial([2]), Polynomial([2])), theta)


# -- properties over the corpus ---------------------------------------------------------------

def test_classes_match_sympy_on_small_corpus():
    for g in connected_unit_graphs(4):
        for theta in sympy_oracle.real_roots(g):
            expected = sympy_oracle.classes(g, theta)
            ts = [t for t in roots(g) if t.lo < theta.evalf(50) < t.hi]
            assert len(ts) == 1
            assert {v: c.value for v, c in classes(g, ts[0]).items()} == expected


@settings(max_examples=40, deadline=None)
@given(weighted_graphs(min_n=1, max_n=6))
def test_decomposition_invariants_at_every_root(g):
    for theta in roots(g):
        dec = decompose(g, theta)
        assert dec.violations() == []
        assert multiplicity_formula_check(g, theta).ok
        assert internal_frontier_checks(g, theta).ok
        for i in dec.A:
            assert stability_check(g, theta, i).ok


@settings(max_examples=40, deadline=None)
@given(weighted_graphs(min_n=1, max_n=6), st.fractions(-4, 4, max_denominator=7))
def test_non_root_times_have_empty_zero_set(g, r):
    if matching_polynomial(g).sign_at(r) == 0:
        return
    dec = decompose(g, at(r))
    assert dec.D == frozenset() and dec.A == frozenset() and dec.m == 0
    assert dec.N_minus | dec.N_plus | dec.P == frozenset(g.vertices)


@settings(max_examples=30, deadline=None)
@given(weighted_graphs(min_n=2, max_n=5), st.data())
def test_sign_table_all_pairs(g, data):
    rs = roots(g)
    theta = data.draw(st.sampled_from(rs))
    for i in g.vertices:
        for j in g.vertices:
            if i != j:
                assert sign_table_check(g, theta, i, j).ok


def test_invariant_violation_is_an_assertion():
    assert issubclass(InvariantViolation, AssertionError)
