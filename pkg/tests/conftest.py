import pathlib
import re
import sys
from collections import defaultdict

sys.path.insert(0, str(pathlib.Path(__file__).parent))

_CRITERION = re.compile(r"test_acceptance\.py::test_c(\d+)_(\w+?)(?:\[|$)")
_outcomes = defaultdict(list)
_titles = defaultdict(set)


def pytest_runtest_logreport(report):
    m = _CRITERION.search(report.nodeid)
    if not m:
        return
    if report.when == "call" or (report.when == "setup" and not report.passed):
        n = int(m.group(1))
        _outcomes[n].append(report.passed)
        _titles[n].add(m.group(2).replace("_", " "))


def pytest_terminal_summary(terminalreporter):
    if not _outcomes:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_outcomes):
        results = _outcomes[n]
        status = "PASS" if all(results) else "FAIL"
        title = ", ".join(sorted(_titles[n]))
        terminalreporter.write_line(f"criterion {n:2d}: {status}  ({sum(results)}/{len(results)} cases)  {title}")
