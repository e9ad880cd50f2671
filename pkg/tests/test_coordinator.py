from arckit.claims import ClaimReport
from arckit.config import Config
from arckit.coordinator import Coordinator
from arckit.errors import ArckitError, FixtureInvalid, SizeCapExceeded
from arckit.storage import load_runs


def _report(claim, refuted=True):
    report = ClaimReport(claim)
    report.check("premise", True)
    report.refuted = refuted
    return report


def _coordinator(**verifiers):
    coordinator = Coordinator(Config())
    coordinator.verifiers.update(verifiers)
    return coordinator


def test_reports_come_back_in_claim_order():
    coordinator = _coordinator(A=lambda config: _report("A"), B=lambda config: _report("B"),
                               CE1=lambda config: _report("CE1"))
    reports = coordinator.run(["CE1", "A", "B"])
    assert [r.claim for r in reports] == ["A", "B", "CE1"]
    assert all(r.verified for r in reports)


def test_threads_give_the_same_reports():
    verifiers = dict(A=lambda config: _report("A"), B=lambda config: _report("B", refuted=False))
    serial = _coordinator(**verifiers).run(["A", "B"])
    coordinator = _coordinator(**verifiers)
    coordinator.workers = 2
    threaded = coordinator.run(["B", "A"])
    assert [r.to_dict(timing=False) for r in threaded] == [r.to_dict(timing=False) for r in serial]


def test_failures_are_isolated():
    def broken(config):
        raise ArckitError("boom")

    def too_big(config):
        raise SizeCapExceeded("chord model enumeration", 21, 8)

    partial = _report("CE1")
    partial.check("mistyped", False)

    def invalid(config):
        raise FixtureInvalid("premise failed", partial)

    reports = _coordinator(A=broken, B=too_big, CE1=invalid).run(["A", "B", "CE1"])
    assert [r.verified for r in reports] == [False, False, False]
    assert reports[0].premises[0].text == "boom"
    assert reports[1].premises[0].text.startswith("skipped:")
    assert reports[2] is partial


def test_unknown_claim():
    (report,) = Coordinator(Config()).run(["Z"])
    assert report.claim == "Z"
    assert not report.verified


def test_runs_are_recorded(tmp_path):
    db = str(tmp_path / "runs.db")
    coordinator = Coordinator(Config(db_path=db))
    coordinator.verifiers["B"] = lambda config: _report("B")
    coordinator.run(["B"])
    (run,) = load_runs(db_path=db)
    assert run["command"] == "verify-claims"
    assert run["result"]["claim"] == "B"
