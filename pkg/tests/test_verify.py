import json

from conlat import evaluate, named
from conlat.construct import chain
from conlat.verify import (
    Check, VerificationReport, expected_con_structure, lemma_violations, registered_checks,
    verify_paper, zero_isolated_count,
)


def test_lemma_holds_on_small_examples():
    for e in ("N5", "M3", "C(2)*C(3)", "B2 + N5", "C(3)#(C(2)+B2+C(2))", "G", "Hp"):
        assert lemma_violations(evaluate(e)) == []
    assert lemma_violations(chain(1)) == []


def test_expected_structures():
    assert expected_con_structure(3, 5).n == 5
    assert expected_con_structure(4, 7).n == 16


def test_bottom_isolated_count():
    assert zero_isolated_count(named("B2")) == 1
    assert zero_isolated_count(chain(3)) == 2


def test_report_is_complete_and_passes_at_six():
    report = verify_paper(6)
    names = [c.name for c in report.checks]
    assert names == [name for name, _, _ in registered_checks()]
    assert len(set(names)) == len(names)
    assert report.ok, report.to_text()
    data = report.to_json()
    assert data["format"] == 1 and data["ok"]
    assert "runtime" not in data["checks"][0]
    assert json.loads(json.dumps(data)) == data


def test_conjectures_never_fail():
    report = VerificationReport(max_n=6, checks=[
        Check("a", "claim", "PASS"),
        Check("b", "guess", "DISAGREES", conjecture=True),
    ])
    assert report.ok
    text = report.to_text(timings=False)
    assert "[CONJECTURE DISAGREES] b" in text
    report.checks.append(Check("c", "claim", "FAIL"))
    assert not report.ok


def test_selected_checks():
    report = verify_paper(7, only={"census-7", "rank-5-family"})
    assert [c.name for c in report.checks] == ["census-7", "rank-5-family"]
    assert report.checks[1].conjecture and report.checks[1].status == "AGREES"
