from percforge.audit import run_audit


def test_audit_passes():
    report = run_audit(deep=False)
    failed = [row for row in report["rows"] if not row["ok"]]
    assert failed == []
    assert report["pass"] is True
    assert report["counts"]["failed"] == 0
    assert report["counts"]["total"] == len(report["rows"]) >= 30


def test_audit_rows_are_self_describing():
    report = run_audit(deep=False)
    for row in report["rows"]:
        assert set(row) == {"check", "instance", "expected", "got", "ok"}
        assert row["ok"] == (row["expected"] == row["got"])
