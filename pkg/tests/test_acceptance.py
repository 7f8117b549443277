"""Acceptance suite: one check per criterion, one printed PASS/FAIL line each.

Run under pytest, or directly with ``python tests/test_acceptance.py``.
"""

import sys

import pytest

from ratcurves.verify import CHECKS, Session, run_check, run_checks


@pytest.fixture(scope="module")
def results():
    return {r.id: r for r in run_checks()}


@pytest.mark.parametrize("cid", sorted(CHECKS))
def test_criterion(cid, results, capsys):
    r = results[cid]
    with capsys.disabled():
        print(f"\n{r.line()}  [{r.seconds:.1f}s]", end="")
    assert r.passed, r.detail or r.computed


def test_corrupted_witnesses_are_caught(capsys):
    S = Session(corrupt=True)
    rows = [run_check(cid, S) for cid in sorted(CHECKS) if cid != 9]
    failed = [r for r in rows if not r.passed]
    with capsys.disabled():
        print(f"\n[{'PASS' if failed else 'FAIL'}] negative control: {len(failed)} of {len(rows)} "
              "checks fail on corrupted witnesses", end="")
    assert failed


if __name__ == "__main__":
    rows = run_checks()
    for r in rows:
        print(f"{r.line()}  [{r.seconds:.1f}s]")
    sys.exit(0 if all(r.passed for r in rows) else 1)
