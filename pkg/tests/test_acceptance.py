"""Acceptance criteria, one test per criterion.

Each test prints a single PASS/FAIL line with its wall time against the
budget; the lines are repeated in the pytest terminal summary.  Run the
file directly (``python3 tests/test_acceptance.py``) for just those lines.
"""

from __future__ import annotations

import random
import time
from contextlib import contextmanager
from fractions import Fraction

import pytest

from conftest import connected_unit_graphs, random_weighted
from matchroots import bounds, classify, matchpoly, oracle, pathtree
from matchroots.exact import AlgebraicNumber, Polynomial, compare, compare_algebraic, isolate_roots, multiplicity_at, sign_at
from matchroots.graph import WeightedGraph, complete_graph, cycle_graph, hamiltonian_path, path_graph, star_graph
from matchroots.random_graphs import random_connected_graph, random_graph
from matchroots.verify import run_suite

pytestmark = pytest.mark.acceptance

RESULTS: list[str] = []


@contextmanager
def criterion(name: str, budget: float):
    """Time the block and record one line; a failed assertion or an overrun fails the criterion."""
    start = time.perf_counter()
    detail = ""
    try:
        yield
    except BaseException as exc:
        detail = f" [{type(exc).__name__}: {str(exc)[:200]}]"
        raise
    finally:
        elapsed = time.perf_counter() - start
        ok = not detail and elapsed < budget
        if not detail and not ok:
            detail = " [over budget]"
        line = f"{'PASS' if ok else 'FAIL'}  {name}  ({elapsed:.1f}s / budget {budget:.0f}s){detail}"
        RESULTS.append(line)
        print(line)
    assert elapsed < budget, f"{name} took {elapsed:.1f}s, budget {budget}s"


def _suites_pass(g: WeightedGraph, *suites: str) -> list[dict]:
    """Failure records of the named suites on g."""
    out = []
    for suite in suites:
        report = run_suite(g, suite)
        out.extend(rec.to_json() for rec in report.failures())
    return out


def structure_corpus() -> list[WeightedGraph]:
    return list(connected_unit_graphs(6)) + random_weighted(100, 10, seed0=9000)


def test_oracle_equivalence():
    with criterion("oracle equivalence: DP == brute force, exact", 60):
        corpus = list(connected_unit_graphs(6)) + random_weighted(200, 8, seed0=1000)
        assert len(corpus) == 143 + 200
        bad = [g.to_dict() for g in corpus
               if matchpoly.matching_polynomial(g) != matchpoly.matching_polynomial_bruteforce(g)]
        assert not bad, bad[:1]


def test_real_rootedness_and_bracket():
    with criterion("real-rootedness and bracket on 200 instances n <= 10", 120):
        for g in random_weighted(200, 10, seed0=2000):
            found = matchpoly.roots_with_multiplicity(g)
            assert sum(m for _, m in found) == g.n, g.to_dict()
            hl = matchpoly.heilmann_lieb_bound(g)
            top = max(g.offset(v) for v in g.vertices)
            bottom = min(g.offset(v) for v in g.vertices)
            for t, _ in found:
                assert compare(t, hl.lo) >= 0 and compare(t, hl.hi) <= 0, g.to_dict()
                # exact bracket: (t - edge)^2 <= 4B outside the offset range
                for edge in (top, bottom):
                    beyond = compare(t, edge) * (1 if edge == top else -1) > 0
                    if beyond:
                        gap = Polynomial([edge * edge - 4 * hl.B, -2 * edge, 1])
                        assert sign_at(gap, t) <= 0, g.to_dict()
            assert matchpoly.real_rootedness_check(g).ok


def test_identity_suites():
    with criterion("identities: derivative, Christoffel-Darboux, contraction, path tree", 300):
        small = list(connected_unit_graphs(6)) + random_weighted(60, 8, seed0=3000, min_n=2)
        tree = list(connected_unit_graphs(6)) + random_weighted(40, 7, seed0=3500)
        for g in small:
            assert matchpoly.derivative_identity_check(g).ok, g.to_dict()
            vs = g.vertices
            for a in range(len(vs)):
                for b in range(a + 1, len(vs)):
                    i, j = vs[a], vs[b]
                    assert matchpoly.christoffel_darboux_check(g, i, j).ok, (g.to_dict(), i, j)
                    assert matchpoly.contraction_identity_check(g, i, j).ok, (g.to_dict(), i, j)
        for g in tree:
            for i in g.vertices:
                assert pathtree.godsil_identity_check(g, i).ok, (g.to_dict(), i)


def test_structure_theorems():
    with criterion("structure theorems at every root, zero failures", 600):
        corpus = structure_corpus()
        failures = []
        for g in corpus:
            failures += _suites_pass(g, "stability", "gallai", "signs")
        assert not failures, failures[:3]


def test_sylvester():
    with criterion("Sylvester counts on every Hamiltonian-path graph", 120):
        checked = 0
        for g in structure_corpus():
            c = hamiltonian_path(g)
            if c is None:
                continue
            checked += 1
            assert len(matchpoly.roots(g)) == g.n, g.to_dict()
            for t in pathtree.sample_times(g, pathtree.chain_polynomials(g, c)):
                s = pathtree.sylvester_count(g, c, t)
                assert s.forward == s.reverse == s.roots_below, (g.to_dict(), t)
        assert checked > 100


def test_classical_recovery():
    with criterion("classical structure recovered at 0", 300):
        corpus = list(connected_unit_graphs(7))
        corpus += [random_graph(1 + k % 12, Fraction(1 + k % 4, 5), 4000 + k) for k in range(100)]
        assert len(corpus) == 996 + 100
        for g in corpus:
            assert oracle.crosscheck_theta_zero(g).ok, g.to_dict()
            assert oracle.ge_structure_check(g).ok, g.to_dict()
        k13 = oracle.classical_decomposition(star_graph(3))
        assert k13.deficiency == 2 and k13.A == {1}
        c5 = cycle_graph(5)
        assert oracle.classical_decomposition(c5).deficiency == 1
        for m in oracle.maximum_matchings(c5):
            assert len(set(c5.vertices) - m.covered()) == 1


def test_largest_root_bounds():
    with criterion("largest-root bounds on 100 connected graphs n in [3, 10]", 120):
        rng = random.Random(5000)
        for k in range(100):
            g = random_connected_graph(3 + k % 8, Fraction(1 + k % 3, 4), 5000 + k, weighted=k % 2 == 0)
            assert bounds.extreme_zero_check(g).ok, g.to_dict()
            assert bounds.star_bounds_check(g)[1].ok, g.to_dict()
            u, v, w = rng.choice(list(g.edges()))
            scale = Fraction(rng.randint(1, 7), 8)
            assert bounds.edge_monotonicity_check(g, u, v, w * scale).ok, (g.to_dict(), u, v, scale)
        k3, _ = bounds.star_bounds_check(complete_graph(3))
        sqrt2, sqrt3 = _sqrt(2), _sqrt(3)
        assert compare_algebraic(k3.z_star, sqrt2) == 0 and compare_algebraic(k3.z_G, sqrt3) == 0
        assert compare_algebraic(k3.z_star, k3.z_G) < 0 and compare(k3.z_G, Fraction(2)) < 0
        k13, _ = bounds.star_bounds_check(star_graph(3))
        assert compare_algebraic(k13.z_star, sqrt3) == 0 and compare_algebraic(k13.z_G, sqrt3) == 0


def _sqrt(n: int) -> AlgebraicNumber:
    return isolate_roots(Polynomial([-n, 0, 1]))[-1]


def test_micro_examples():
    with criterion("worked micro-examples", 5):
        zero = AlgebraicNumber.from_rational(0)
        p3 = path_graph(3)
        # brute force first, then the frozen values
        mu = matchpoly.matching_polynomial_bruteforce(p3)
        assert mu == Polynomial([0, -2, 0, 1])
        assert multiplicity_at(mu, zero) == 1
        dec = classify.decompose(p3, zero)
        assert (dec.D, dec.A, dec.m) == ({1, 3}, {2}, 1)

        k13 = star_graph(3)
        mu = matchpoly.matching_polynomial_bruteforce(k13)
        assert mu == Polynomial([0, 0, -3, 0, 1])
        dec = classify.decompose(k13, zero)
        assert (dec.D, dec.A, dec.m) == ({2, 3, 4}, {1}, 2)

        t = Fraction(6, 5)
        below = sum(1 for r in isolate_roots(matchpoly.matching_polynomial_bruteforce(p3)) if compare(r, t) < 0)
        assert below == 2
        s = pathtree.sylvester_count(p3, (1, 2, 3), t)
        assert s.forward == s.reverse == 2

        w = matchpoly.contraction_weight(p3, 1, 3)
        assert w.as_function().equals(matchpoly.RationalFunction(Polynomial([-1]), Polynomial([0, 0, 1])))
        assert matchpoly.contraction_class_at(w, zero) == matchpoly.CONTRACTION_MINUS_INF


if __name__ == "__main__":
    import sys

    sys.exit(pytest.main([__file__, "-q", "-p", "no:cacheprovider"]))
