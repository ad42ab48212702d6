import re
import sys
import time
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

_START = time.perf_counter()
_CRITERIA: dict[int, list[str]] = {}
_NAME = re.compile(r"test_criterion_(\d+)_")


def pytest_runtest_logreport(report):
    m = _NAME.search(report.nodeid)
    if not m or "test_acceptance.py" not in report.nodeid:
        return
    if report.when == "call" or report.outcome != "passed":
        _CRITERIA.setdefault(int(m.group(1)), []).append(report.outcome)


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    elapsed = time.perf_counter() - _START
    tr = terminalreporter
    tr.section("acceptance criteria")
    for k in sorted(_CRITERIA):
        ok = all(o == "passed" for o in _CRITERIA[k])
        extra = ""
        if k == 12:
            # the full-suite budget only means something when everything ran
            extra = f"  (session {elapsed:.1f}s, budget 60s)"
            ok = ok and elapsed < 60
        tr.write_line(f"criterion {k:>2}: {'PASS' if ok else 'FAIL'}{extra}")
