import pytest

from ratcurves.construct import curve_with_splitting
from ratcurves.errors import PreconditionError
from ratcurves.syzygy import normal_splitting
from ratcurves.verify import (
    CHECKS,
    SCOPES,
    CheckResult,
    Session,
    codim_grid,
    corrupt_curve,
    monomial_sequences,
    resolve_scope,
    run_check,
    run_checks,
)


def test_every_scope_has_a_check():
    assert sorted(CHECKS) == sorted(SCOPES) == list(range(1, 11))
    assert resolve_scope("all") == list(range(1, 11))
    assert resolve_scope("codim") == [6]
    with pytest.raises(PreconditionError):
        resolve_scope("everything")


def test_corruption_changes_the_splitting():
    f = curve_with_splitting([2, 4, 6])
    assert normal_splitting(corrupt_curve(f)) != normal_splitting(f)


def test_session_registers_and_corrupts():
    f = curve_with_splitting([2, 2])
    S = Session(corrupt=True)
    g = S.take("w", f)
    assert g != f and S.corpus == [("w", g)]
    S.take("unregistered", f, register=False)
    assert len(S.corpus) == 1


def test_result_line_and_record():
    r = CheckResult(3, "alzati-re", "demo", "1", "2", False, seconds=1.5)
    assert r.line().startswith("[FAIL]  3 alzati-re")
    rec = r.to_record()
    assert rec["status"] == "FAIL" and rec["schema_version"] == 1 and "seconds" not in rec


def test_check_errors_become_failures(monkeypatch):
    def boom(S):
        raise PreconditionError("synthetic")
    monkeypatch.setitem(CHECKS, 4, boom)
    res = run_check(4, Session())
    assert not res.passed and "synthetic" in res.computed


def test_grids_are_nonempty():
    assert len(list(monomial_sequences())) > 50
    assert len(list(codim_grid())) > 1000


@pytest.mark.parametrize("scope", ["alzati-re", "p5", "ddk"])
def test_fast_scopes_pass_and_fail_when_corrupted(scope):
    assert all(r.passed for r in run_checks(scope))
    assert not any(r.passed for r in run_checks(scope, corrupt=True))
