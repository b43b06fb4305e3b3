import subprocess
import sys
from pathlib import Path

import pytest

ROOT = Path(__file__).resolve().parents[1]
GOLDEN = ROOT / "golden"


def run_cli(*args, check=False):
    """Run ``python -m fusscatalan`` in a subprocess."""
    cmd = [sys.executable, "-m", "fusscatalan", *map(str, args)]
    cp = subprocess.run(cmd, capture_output=True, text=True)
    if check and cp.returncode != 0:
        raise AssertionError(f"{cmd} exited {cp.returncode}: {cp.stderr}")
    return cp


@pytest.fixture
def cli():
    return run_cli


_CRITERIA = {}


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.failed):
        return
    if "test_acceptance.py::test_criterion_" not in report.nodeid:
        return
    name = report.nodeid.rsplit("::", 1)[1]
    _CRITERIA[name] = (report.outcome, report.longrepr)


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(_CRITERIA):
        outcome, longrepr = _CRITERIA[name]
        number = int(name.split("_")[2])
        title = name.split("_", 3)[3].replace("_", " ")
        status = "PASS" if outcome == "passed" else "FAIL"
        line = f"criterion {number:2d} {status}  {title}"
        if outcome != "passed" and longrepr is not None:
            msg = getattr(getattr(longrepr, "reprcrash", None), "message", "")
            if msg:
                line += f"  ({msg.splitlines()[0][:160]})"
        terminalreporter.write_line(line)
