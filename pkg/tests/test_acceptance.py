"""Acceptance criteria 1-11, run once through the full-level selfcheck."""
import re
import subprocess
import sys
import time

import pytest

BUDGET_SECONDS = 15 * 60


@pytest.fixture(scope="session")
def selfcheck():
    cmd = [sys.executable, "-m", "hubsolve.cli", "selfcheck", "--level", "full",
           "--seed", "1", "--timing"]
    start = time.monotonic()
    proc = subprocess.run(cmd, capture_output=True, text=True)
    elapsed = time.monotonic() - start
    lines = {}
    for line in proc.stdout.splitlines():
        m = re.match(r"criterion=(\d+) ", line)
        if m:
            lines[int(m.group(1))] = line
    return proc, elapsed, lines


@pytest.mark.slow
@pytest.mark.parametrize("k", range(1, 11))
def test_criterion(selfcheck, k, capsys):
    proc, _, lines = selfcheck
    line = lines.get(k, f"criterion={k} result=fail detail=missing stderr={proc.stderr[-300:]!r}")
    ok = "result=pass" in line
    with capsys.disabled():
        print(f"\ncriterion {k}: {'PASS' if ok else 'FAIL'} | {line}")
    assert ok, line


@pytest.mark.slow
def test_criterion_11(selfcheck, capsys):
    proc, elapsed, _ = selfcheck
    ok = proc.returncode == 0 and elapsed < BUDGET_SECONDS
    with capsys.disabled():
        print(f"\ncriterion 11: {'PASS' if ok else 'FAIL'} | exit={proc.returncode} "
              f"seconds={elapsed:.1f}")
    assert proc.returncode == 0, proc.stdout[-2000:] + proc.stderr[-2000:]
    assert elapsed < BUDGET_SECONDS
