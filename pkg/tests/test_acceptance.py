from lorentzkit import config
from lorentzkit.acceptance import ITEMS, run_item, run_suite


def test_every_item_passes_in_quick_mode():
    for index in range(1, len(ITEMS) + 1):
        report = run_item(index, 1729, quick=True)
        assert report.passed, (report.command, report.failed)
        assert report.checks


def test_item_reports_are_named_and_numbered():
    report = run_item(1, 1729, quick=True)
    assert report.command == "01-boost_matrix"


def test_suite_is_independent_of_scheduling(monkeypatch):
    monkeypatch.setattr(config, "PARALLEL", True)
    threaded = run_suite(seed=3, quick=True, workers=4).to_json()
    monkeypatch.setattr(config, "PARALLEL", False)
    serial = run_suite(seed=3, quick=True).to_json()
    assert threaded == serial


def test_suite_prefixes_checks_with_item_names():
    suite = run_suite(seed=1729, quick=True, workers=1)
    assert suite.passed
    assert suite.inputs == {"seed": 1729, "mode": "quick"}
    assert all(check.name.startswith("[") for check in suite.checks)
    assert suite.checks[0].name.startswith("[01-boost_matrix]")
