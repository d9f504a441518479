import json

import pytest

from cohomology_engine.bench.bench_case import ERROR, MISMATCH, PASS, UNCHECKED, BenchCase, CaseResult, RunReport
from cohomology_engine.bench.builtin_suite import WEDGE, builtin_suite, torus_wedge_pair
from cohomology_engine.bench.runner import load_suite, ring_for, run_case, run_suite
from cohomology_engine.errors import UnsupportedSpaceError
from cohomology_engine.topology import spaces


def test_case_name_defaults():
    case = BenchCase("torus", "Z", 1, "g1 + g2", [1, 1])
    assert case.name == "torus Z H^1: g1 + g2"
    assert case.expected == (1, 1)
    assert BenchCase.from_dict(case.to_dict()) == case
    with pytest.raises(ValueError):
        BenchCase.from_dict({"space": "s1"})


@pytest.mark.parametrize("case,value", [
    (BenchCase("s1", "Z", 1, "g + g", (2,)), (2,)),
    (BenchCase("s2", "Z/2", 2, "g + g", (0,)), (0,)),
    (BenchCase("rp2", "Z", 2, "-g", (1,)), (1,)),
    (BenchCase("torus", "Z", 1, "2 * g1 - g2", (2, -1)), (2, -1)),
    (BenchCase("klein", "Z", 1, "g + g", (2,)), (2,)),
])
def test_additive_cases(case, value):
    result = run_case(case)
    assert result.status == PASS
    assert result.value == value


def test_cup_cases():
    torus, wedge = (run_case(c) for c in torus_wedge_pair())
    assert torus.status == PASS and torus.value in {(1,), (-1,)}
    assert wedge.status == PASS and wedge.value == (0,)
    assert run_case(BenchCase("rp2", "Z/2", 2, "g(1) * g(1)", (1,))).status == PASS


def test_mismatch_and_unchecked():
    assert run_case(BenchCase("s1", "Z", 1, "g", (2,))).status == MISMATCH
    assert run_case(BenchCase("s1", "Z", 1, "g", (1, 0))).status == MISMATCH
    assert run_case(BenchCase("s1", "Z", 1, "-g", (1,), up_to_sign=True)).status == PASS
    assert run_case(BenchCase("s1", "Z", 1, "g")).status == UNCHECKED


@pytest.mark.parametrize("case", [
    BenchCase("torus", "Z", 1, "g"),
    BenchCase("torus", "Z", 1, "g3"),
    BenchCase("s1", "Z", 1, "2"),
    BenchCase("s2", "Z", 2, "g(1)"),
    BenchCase("s1", "Z", 1, "g + 1"),
    BenchCase("cp3", "Z", 2, "g(2) * g(2)"),
    BenchCase("s1", "Q", 1, "g"),
    BenchCase("nowhere", "Z", 1, "g"),
    BenchCase("s1", "Z", 1, "g +"),
])
def test_error_cases(case):
    result = run_case(case)
    assert result.status == ERROR
    assert result.message


def test_ring_for_routes():
    assert ring_for(spaces.TORUS, 0).source == "simplicial"
    assert ring_for(spaces.cp(2), 0).source == "gysin"
    assert ring_for(spaces.rp(5), 2).source == "gysin"
    with pytest.raises(UnsupportedSpaceError):
        ring_for(spaces.rp(5), 0)


def test_builtin_suite_passes():
    cases = builtin_suite()
    report = run_suite(cases, threads=2, progress=False)
    assert report.ok
    assert [r.case for r in report.results] == cases
    assert report.count(UNCHECKED) == 0
    assert report.count(PASS) == len(cases)
    assert any(c.space == WEDGE for c in cases)


@pytest.mark.parametrize("space,coeff,expression", [
    ("rp2", "Z/2", "g(2)"),
    ("klein", "Z/2", "g(2)"),
    (WEDGE, "Z/2", "g(2)"),
    (WEDGE, "Z/2", "g1(1) * g2(1)"),
    (WEDGE, "Z/2", "(g1(1) + g1(1)) * g2(1)"),
])
def test_builtin_suite_has_mod_two_degree_two_rows(space, coeff, expression):
    rows = [c for c in builtin_suite() if (c.space, c.coeff, c.degree, c.expression) == (space, coeff, 2, expression)]
    assert len(rows) == 1
    assert rows[0].expected is not None
    assert run_case(rows[0]).status == PASS


def test_klein_mod_two_products_follow_the_form():
    def product(expression):
        result = run_case(BenchCase("klein", "Z/2", 2, expression))
        assert result.status == UNCHECKED
        return result.value[0]

    a, b, c = product("g1(1) * g1(1)"), product("g2(1) * g2(1)"), product("g1(1) * g2(1)")
    # nondegenerate and not alternating
    assert (a, b) != (0, 0)
    assert c == (1 + a * b) % 2


def test_report_round_trip():
    report = run_suite(torus_wedge_pair() + [BenchCase("s1", "Z", 1, "g", (5,))], threads=1, progress=False)
    assert not report.ok
    restored = RunReport.from_dict(json.loads(json.dumps(report.to_dict())))
    assert restored == report
    assert report.to_dict()["summary"] == {PASS: 2, MISMATCH: 1, UNCHECKED: 0, ERROR: 0}
    assert "3 cases: 2 pass, 1 mismatch, 0 unchecked, 0 error" in report.render()
    with pytest.raises(ValueError):
        CaseResult.from_dict({"case": torus_wedge_pair()[0].to_dict(), "status": "maybe"})


def test_load_suite(tmp_path):
    path = tmp_path / "suite.json"
    path.write_text(json.dumps([c.to_dict() for c in torus_wedge_pair()]), encoding="utf-8")
    assert load_suite(str(path)) == torus_wedge_pair()
    path.write_text(json.dumps({"space": "s1"}), encoding="utf-8")
    with pytest.raises(ValueError):
        load_suite(str(path))
    with pytest.raises(FileNotFoundError):
        load_suite(str(tmp_path / "missing.json"))
