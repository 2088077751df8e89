import json

from lorentzkit.report import Check, Report


def test_report_pass_and_failures():
    report = Report("demo", {"n": 3})
    report.add("equal", 1, 1)
    report.add("forced", "a", "b", passed=True)
    assert report.passed

    report.add("different", 1, 2)
    assert not report.passed
    assert [c.name for c in report.failed] == ["different"]


def test_report_json_is_deterministic():
    report = Report("demo", {"b": 2, "a": 1})
    report.add("equal", 1, 1)
    report.results = {"value": "7"}
    first = report.finish().to_json()
    second = report.finish().to_json()
    assert first == second

    data = json.loads(first)
    assert data["command"] == "demo"
    assert data["inputs"] == {"a": "1", "b": "2"}
    assert data["checks"] == [{"name": "equal", "expected": "1", "computed": "1", "pass": True}]
    assert data["results"] == {"value": "7"}
    assert "elapsed_s" not in data


def test_report_without_results_omits_key():
    assert "results" not in Report("empty").to_dict()
    assert Report("empty").passed


def test_report_frame_columns():
    report = Report("demo")
    report.extend([Check("a", "1", "1", True), Check("b", "1", "2", False)])
    frame = report.to_frame()
    assert list(frame.columns) == ["name", "expected", "computed", "pass"]
    assert frame["pass"].tolist() == [True, False]
