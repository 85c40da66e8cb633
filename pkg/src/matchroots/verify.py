"""Verification suites: run every applicable check on one graph and collect a report."""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable

from . import bounds, classify, matchpoly, oracle, pathtree
from .classify import InvariantViolation, SignClass
from .exact import AlgebraicNumber, format_rational
from .graph import WeightedGraph, hamiltonian_path, induced_subgraph
from .matchpoly import IdentityError, PreconditionError, Verdict

SUITES = (
    "all",
    "hl",
    "interlace",
    "cd",
    "contraction",
    "signs",
    "stability",
    "gallai",
    "sylvester",
    "pathtree",
    "bounds",
    "classical",
)

# one-line statement of each law, carried in every record
STATEMENTS = {
    "real-rootedness": "mu(G) has n real roots counted with multiplicity, all inside the Heilmann-Lieb bracket",
    "interlacing": "roots of mu(G) and mu(G - i) interlace and multiplicities differ by at most one",
    "derivative-identity": "mu(G)' equals the sum of mu(G - j) over all vertices",
    "christoffel-darboux": "mu(G-i)mu(G-j) - mu(G-i-j)mu(G) equals the weighted sum of mu(G-c)^2 over i-j paths",
    "contraction-identity": "alpha_i(G) = alpha_i(G-j) + w_ij / alpha_j(G-i) with w_ij minus a sum of squares",
    "decomposition": "D, A, N-, N+, P partition the vertices and the frontier of D lies in the infinity class",
    "multiplicity-formula": "m_theta(G) equals the number of critical components minus the frontier size",
    "frontier-inside-infinity": "every frontier vertex of the zero class is in the infinity class",
    "stability": "deleting a frontier vertex preserves every other class and every finite continued-fraction value",
    "stability-reweighted": "reweighting a frontier vertex preserves all values when critical components stay attached",
    "matched-condition": "every non-empty S in the frontier touches at least |S|+1 critical components",
    "critical-structure": "critical components are theta-critical and no vertex of N and P is essential within N and P",
    "gallai-simple-root": "a connected theta-critical graph has theta as a simple root",
    "sign-table": "the class of the contraction weight constrains the classes of i and j in G, G-i and G-j",
    "internal-frontier": "zero class non-empty iff root; infinity iff a neighbor is zero after deletion; frontier deletions keep signs",
    "sign-order": "classes change in the order -, 0, +, inf, - as theta increases",
    "path-tree-identity": "mu(G) mu(T - root) equals mu(G - i) mu(T) for the path tree T at i",
    "path-tree-signs": "in the annotated path tree a zero node always has an infinite parent",
    "path-zeros-minus-poles": "zeros minus infinities along a path and its reverse equal m_theta(G) - m_theta(G - c)",
    "zero-path": "a Hamiltonian path is a 0-path at every root and its ends are in the zero class",
    "sylvester": "positive ratios along a Hamiltonian path and its reverse count the roots below theta",
    "path-plus-count": "positive terms along a path equal the root count of mu(G) minus that of mu(G - c) below theta",
    "extreme-roots-simple": "the smallest and largest roots of a connected graph are simple and theta-critical",
    "largest-root-monotone": "raising an edge weight toward zero strictly lowers the largest root",
    "star-bounds": "the star at the largest offset bounds the largest root from below; Heilmann-Lieb from above",
    "classical-structure": "the classical structure theorem and Gallai's lemma hold by enumeration",
    "classical-crosscheck": "at theta = 0 with unit weights the polynomial decomposition equals the classical one",
}

CD_MAX_N = 12
TREE_MAX_NODES = 20000
ANNOTATE_MAX_NODES = 2000


@dataclass
class CheckRecord:
    law: str
    status: str
    theta: dict | str | None = None
    details: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        out = {"law": self.law, "statement": STATEMENTS.get(self.law, ""), "status": self.status}
        if self.theta is not None:
            out["theta"] = self.theta
        out["details"] = _jsonable(self.details)
        return out


def _jsonable(value):
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple, set, frozenset)):
        items = sorted(value) if isinstance(value, (set, frozenset)) else value
        return [_jsonable(v) for v in items]
    if isinstance(value, Fraction):
        return format_rational(value)
    if isinstance(value, AlgebraicNumber):
        return value.to_json()
    if isinstance(value, SignClass):
        return value.value
    return value


@dataclass
class Report:
    instance: dict
    suite: str
    records: list[CheckRecord] = field(default_factory=list)
    wall_time: float = 0.0

    @property
    def passed(self) -> bool:
        return all(r.status != "fail" for r in self.records)

    def counts(self) -> dict[str, int]:
        out: dict[str, int] = {}
        for r in self.records:
            out[r.status] = out.get(r.status, 0) + 1
        return dict(sorted(out.items()))

    def failures(self) -> list[CheckRecord]:
        return [r for r in self.records if r.status == "fail"]

    def to_json(self, *, include_time: bool = True) -> dict:
        out = {
            "instance": self.instance,
            "suite": self.suite,
            "passed": self.passed,
            "counts": self.counts(),
            "checks": [r.to_json() for r in self.records],
        }
        if include_time:
            out["wall_time"] = round(self.wall_time, 3)
        return out


class _Runner:
    def __init__(self, g: WeightedGraph, report: Report):
        self.g = g
        self.report = report

    def run(self, law: str, fn: Callable[[], Verdict | bool], theta: AlgebraicNumber | Fraction | None = None,
            **context) -> None:
        label = _theta_label(theta)
        try:
            result = fn()
        except PreconditionError as exc:
            self.report.records.append(CheckRecord(law, "not-applicable", label, {**context, "reason": str(exc)}))
            return
        except (InvariantViolation, IdentityError) as exc:
            self.report.records.append(CheckRecord(law, "fail", label, {**context, "error": str(exc)}))
            return
        if isinstance(result, Verdict):
            self.report.records.append(CheckRecord(result.law, result.status, label, {**context, **result.details}))
        else:
            self.report.records.append(CheckRecord(law, "pass" if result else "fail", label, context))

    def not_applicable(self, law: str, reason: str, theta=None) -> None:
        self.report.records.append(CheckRecord(law, "not-applicable", _theta_label(theta), {"reason": reason}))


def _theta_label(theta) -> dict | str | None:
    """Replayable form of a time: witness and interval, or a rational string."""
    if isinstance(theta, AlgebraicNumber):
        return theta.to_json()
    if theta is not None:
        return format_rational(theta)
    return None


def describe(g: WeightedGraph, source: str | None = None) -> dict:
    out = {"n": g.n, "edges": g.edge_count, "unit": g.is_unit(), "connected": g.is_connected(),
           "graph": g.to_dict()}
    if source is not None:
        out["source"] = source
    return out


def _pairs(g: WeightedGraph) -> Iterable[tuple[int, int]]:
    vs = g.vertices
    for a in range(len(vs)):
        for b in range(a + 1, len(vs)):
            yield vs[a], vs[b]


def _times(g: WeightedGraph) -> tuple[list[AlgebraicNumber], list[AlgebraicNumber]]:
    rs = matchpoly.roots(g)
    mids = [AlgebraicNumber.from_rational(t) for t in pathtree.sample_times(g)]
    return rs, mids


# -- suites ------------------------------------------------------------------------------------

def _suite_hl(r: _Runner) -> None:
    r.run("real-rootedness", lambda: matchpoly.real_rootedness_check(r.g))


def _suite_interlace(r: _Runner) -> None:
    for i in r.g.vertices:
        r.run("interlacing", lambda i=i: matchpoly.interlacing_check(r.g, i))


def _suite_cd(r: _Runner) -> None:
    g = r.g
    r.run("derivative-identity", lambda: matchpoly.derivative_identity_check(g))
    if g.n > CD_MAX_N:
        r.not_applicable("christoffel-darboux", f"path enumeration limited to n <= {CD_MAX_N}")
        return
    for i, j in _pairs(g):
        r.run("christoffel-darboux", lambda i=i, j=j: matchpoly.christoffel_darboux_check(g, i, j))


def _suite_contraction(r: _Runner) -> None:
    g = r.g
    if g.n > CD_MAX_N:
        r.not_applicable("contraction-identity", f"path enumeration limited to n <= {CD_MAX_N}")
        return
    for i, j in _pairs(g):
        r.run("contraction-identity", lambda i=i, j=j: matchpoly.contraction_identity_check(g, i, j))


def sign_order_check(g: WeightedGraph, theta: AlgebraicNumber) -> Verdict:
    """Zero vertices go from - to +, infinite ones from + to -, finite non-zero ones keep their sign."""
    bad = []
    for v in g.vertices:
        cls = classify.alpha_class(g, v, theta)
        left, right = classify.sign_change_at(g, v, theta)
        expected = {
            SignClass.ZERO: (SignClass.NEG, SignClass.POS),
            SignClass.INF: (SignClass.POS, SignClass.NEG),
            SignClass.NEG: (SignClass.NEG, SignClass.NEG),
            SignClass.POS: (SignClass.POS, SignClass.POS),
        }[cls]
        if (left, right) != expected:
            bad.append({"vertex": v, "class": cls.value, "left": left.value, "right": right.value})
    return matchpoly.verdict("sign-order", not bad, problems=bad)


def _suite_signs(r: _Runner) -> None:
    g = r.g
    rs, mids = _times(g)
    for theta in rs + mids:
        r.run("decomposition", lambda t=theta: _decomposition_verdict(g, t), theta)
        r.run("sign-order", lambda t=theta: sign_order_check(g, t), theta)
        r.run("internal-frontier", lambda t=theta: classify.internal_frontier_checks(g, t), theta)
        for i, j in _pairs(g):
            r.run("sign-table", lambda t=theta, i=i, j=j: classify.sign_table_check(g, t, i, j), theta)


def _decomposition_verdict(g: WeightedGraph, theta: AlgebraicNumber) -> Verdict:
    dec = classify.decompose(g, theta, verify=False)
    problems = dec.violations()
    return matchpoly.verdict("decomposition", not problems, problems=problems, decomposition=dec.to_json())


def _suite_stability(r: _Runner) -> None:
    g = r.g
    for theta in matchpoly.roots(g):
        dec = classify.decompose(g, theta, verify=False)
        r.run("multiplicity-formula", lambda t=theta: classify.multiplicity_formula_check(g, t), theta)
        r.run("frontier-inside-infinity", lambda t=theta: classify.frontier_inside_infinity_check(g, t), theta)
        r.run("critical-structure", lambda t=theta: classify.critical_structure_check(g, t), theta)
        r.run("matched-condition", lambda t=theta: classify.matched_condition_check(g, t), theta)
        if not dec.A:
            r.not_applicable("stability", "frontier of the zero class is empty", theta)
            r.not_applicable("stability-reweighted", "frontier of the zero class is empty", theta)
            continue
        for i in sorted(dec.A):
            r.run("stability", lambda t=theta, i=i: classify.stability_check(g, t, i), theta)
            # doubling the incident weights keeps every critical component attached
            doubled = {k: 2 * g.weight(i, k) for k in g.neighbors(i)}
            r.run("stability-reweighted",
                  lambda t=theta, i=i, w=doubled: classify.stability2_check(g, t, i, g.offset(i) + 1, w), theta,
                  reweighting={"vertex": i, "r": g.offset(i) + 1, "lambdas": doubled})


def _suite_gallai(r: _Runner) -> None:
    g = r.g
    seen = False
    for theta in matchpoly.roots(g):
        dec = classify.decompose(g, theta, verify=False)
        for comp in dec.critical_components:
            h = induced_subgraph(g, comp)
            seen = True
            r.run("gallai-simple-root", lambda t=theta, h=h: classify.gallai_check(h, t), theta,
                  component=sorted(comp))
        if g.is_connected() and dec.D == frozenset(g.vertices) and len(dec.critical_components) != 1:
            r.run("gallai-simple-root", lambda t=theta: classify.gallai_check(g, t), theta)
    if not seen:
        r.not_applicable("gallai-simple-root", "no critical component at any root")


def _suite_sylvester(r: _Runner) -> None:
    g = r.g
    c = hamiltonian_path(g) if g.n else None
    if c is None:
        r.not_applicable("sylvester", "graph has no Hamiltonian path")
        return
    times = pathtree.sample_times(g, pathtree.chain_polynomials(g, c))
    for t in times:
        r.run("sylvester", lambda t=t: pathtree.sylvester_count(g, c, t).verdict, t, path=list(c))
    r.run("path-plus-count", lambda: pathtree.plus_sign_monotonicity_check(g, c, times), path=list(c))
    for theta in matchpoly.roots(g):
        r.run("zero-path", lambda t=theta: pathtree.zero_path_check(g, c, t), theta, path=list(c))
        r.run("path-zeros-minus-poles", lambda t=theta: pathtree.zeros_minus_poles_check(g, c, t), theta)


def _suite_pathtree(r: _Runner) -> None:
    g = r.g
    for i in g.vertices:
        r.run("path-tree-identity",
              lambda i=i: pathtree.godsil_identity_check(g, i, max_nodes=TREE_MAX_NODES), vertex=i)
    if not g.n:
        return
    root = g.vertices[0]
    if pathtree.count_paths_from(g, root) > ANNOTATE_MAX_NODES:
        r.not_applicable("path-tree-signs", f"path tree larger than {ANNOTATE_MAX_NODES} nodes")
        return
    tree = pathtree.build_path_tree(g, root)
    for theta in matchpoly.roots(g):
        r.run("path-tree-signs", lambda t=theta: bool(pathtree.annotate_signs(g, root, t, tree=tree)), theta,
              vertex=root)


def _suite_bounds(r: _Runner) -> None:
    g = r.g
    if g.n == 0 or not g.is_connected():
        r.not_applicable("extreme-roots-simple", "graph is not connected")
        return
    r.run("extreme-roots-simple", lambda: bounds.extreme_zero_check(g))
    for u, v, w in g.edges():
        r.run("largest-root-monotone", lambda u=u, v=v, w=w: bounds.edge_monotonicity_check(g, u, v, w / 2))
    if g.n >= 3:
        r.run("star-bounds", lambda: bounds.star_bounds_check(g)[1])
    else:
        r.not_applicable("star-bounds", "needs at least three vertices")


def _suite_classical(r: _Runner) -> None:
    g = r.g
    if not g.is_unit():
        r.not_applicable("classical-crosscheck", "graph does not have unit weights")
        return
    if g.n > oracle.STRUCTURE_MAX_N:
        r.not_applicable("classical-crosscheck", f"enumeration limited to n <= {oracle.STRUCTURE_MAX_N}")
        return
    r.run("classical-crosscheck", lambda: oracle.crosscheck_theta_zero(g))
    r.run("classical-structure", lambda: oracle.ge_structure_check(g))


_SUITES: dict[str, Callable[[_Runner], None]] = {
    "hl": _suite_hl,
    "interlace": _suite_interlace,
    "cd": _suite_cd,
    "contraction": _suite_contraction,
    "signs": _suite_signs,
    "stability": _suite_stability,
    "gallai": _suite_gallai,
    "sylvester": _suite_sylvester,
    "pathtree": _suite_pathtree,
    "bounds": _suite_bounds,
    "classical": _suite_classical,
}


def run_suite(g: WeightedGraph, suite: str = "all", *, source: str | None = None) -> Report:
    if suite not in SUITES:
        raise ValueError(f"unknown suite {suite!r}")
    report = Report(describe(g, source), suite)
    runner = _Runner(g, report)
    start = time.perf_counter()
    names = [s for s in SUITES if s != "all"] if suite == "all" else [suite]
    for name in names:
        _SUITES[name](runner)
    report.wall_time = time.perf_counter() - start
    return report
