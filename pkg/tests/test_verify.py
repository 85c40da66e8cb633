import json

import pytest

from conftest import connected_unit_graphs, random_weighted
from matchroots.exact import AlgebraicNumber
from matchroots.graph import WeightedGraph, cycle_graph, path_graph, star_graph
from matchroots.matchpoly import Verdict
from matchroots.verify import STATEMENTS, SUITES, CheckRecord, _Runner, Report, describe, run_suite


def test_k13_all_passes():
    report = run_suite(star_graph(3))
    assert report.passed
    counts = report.counts()
    assert counts["pass"] > 100 and counts.get("fail", 0) == 0


def test_p3_sylvester_passes():
    report = run_suite(path_graph(3), "sylvester")
    assert report.passed
    laws = {r.law for r in report.records}
    assert {"sylvester", "path-plus-count", "zero-path", "path-zeros-minus-poles"} <= laws


@pytest.mark.parametrize("suite", SUITES)
def test_every_suite_runs_on_c5(suite):
    assert run_suite(cycle_graph(5), suite).passed


def test_every_law_has_a_statement():
    report = run_suite(cycle_graph(5))
    assert {r.law for r in report.records} <= set(STATEMENTS)


def test_not_applicable_when_frontier_is_empty():
    # K3 at each root has an empty frontier
    report = run_suite(WeightedGraph.unit(3, [(1, 2), (2, 3), (1, 3)]), "stability")
    statuses = {r.status for r in report.records if r.law == "stability"}
    assert statuses == {"not-applicable"}


def test_reports_are_deterministic():
    g = random_weighted(1, 6, seed0=3)[0]
    a = json.dumps(run_suite(g).to_json(include_time=False), sort_keys=True)
    b = json.dumps(run_suite(g).to_json(include_time=False), sort_keys=True)
    assert a == b


def test_failure_records_carry_a_replayable_theta():
    g = path_graph(3)
    report = Report(describe(g), "custom")
    runner = _Runner(g, report)
    theta = AlgebraicNumber.from_rational(0)
    runner.run("sign-order", lambda: Verdict("sign-order", "fail", {"why": "forced"}), theta)
    assert not report.passed
    (rec,) = report.failures()
    doc = rec.to_json()
    assert AlgebraicNumber.from_json(doc["theta"]) == theta
    assert doc["details"] == {"why": "forced"}
    assert report.to_json()["instance"]["graph"] == g.to_dict()


def test_runner_maps_exceptions():
    g = path_graph(2)
    report = Report(describe(g), "custom")
    runner = _Runner(g, report)
    from matchroots.classify import InvariantViolation
    from matchroots.matchpoly import PreconditionError

    def precondition():
        raise PreconditionError("nope")

    def violation():
        raise InvariantViolation("broken")

    runner.run("stability", precondition)
    runner.run("decomposition", violation)
    runner.run("sign-order", lambda: True)
    assert [r.status for r in report.records] == ["not-applicable", "fail", "pass"]


def test_unknown_suite():
    with pytest.raises(ValueError):
        run_suite(path_graph(2), "nope")


def test_corpus_small_passes():
    for g in connected_unit_graphs(4):
        assert run_suite(g).passed


def test_record_json_shape():
    rec = CheckRecord("stability", "pass", None, {"vertex": 1})
    assert rec.to_json() == {"law": "stability", "statement": STATEMENTS["stability"], "status": "pass",
                             "details": {"vertex": 1}}
