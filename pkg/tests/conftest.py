import re

_AC = re.compile(r"test_acceptance\.py::test_ac(\d+)_(\w+)")
_results: dict[int, tuple[str, bool]] = {}


def pytest_runtest_logreport(report):
    m = _AC.search(report.nodeid)
    if not m or (report.when != "call" and report.passed):
        return
    n, name = int(m.group(1)), m.group(2)
    prev = _results.get(n, (name, True))[1]
    _results[n] = (name, prev and report.passed)


def pytest_terminal_summary(terminalreporter):
    if not _results:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_results):
        name, ok = _results[n]
        terminalreporter.write_line(f"AC{n} {'PASS' if ok else 'FAIL'}  {name.replace('_', ' ')}")
