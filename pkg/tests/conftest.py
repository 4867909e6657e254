import re

_CRITERION = re.compile(r"test_criterion_(\d+)_(\w+)")
_outcomes: dict[str, tuple[str, str]] = {}


def pytest_runtest_logreport(report):
    m = _CRITERION.search(report.nodeid)
    if not m:
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        status = "PASS" if report.outcome == "passed" else "FAIL"
        # parametrized criteria pass only if every case passes
        if _outcomes.get(m.group(1), ("PASS",))[0] == "FAIL":
            status = "FAIL"
        _outcomes[m.group(1)] = (status, m.group(2).replace("_", " "))


def pytest_terminal_summary(terminalreporter):
    if not _outcomes:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_outcomes, key=int):
        status, title = _outcomes[number]
        terminalreporter.write_line(f"{status}  criterion {int(number):2d}: {title}")
