import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

_results: dict[str, list[tuple[str, bool]]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(id): acceptance criterion covered by the test")


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.failed):
        return
    criterion = dict(report.user_properties).get("criterion")
    if criterion is not None:
        _results.setdefault(criterion, []).append((report.nodeid.split("::")[-1], report.passed))


def pytest_runtest_setup(item):
    marker = item.get_closest_marker("criterion")
    if marker is not None:
        item.user_properties.append(("criterion", marker.args[0]))


def pytest_terminal_summary(terminalreporter):
    if not _results:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for criterion in sorted(_results):
        checks = _results[criterion]
        ok = all(passed for _, passed in checks)
        tr.write_line(f"{'PASS' if ok else 'FAIL'}  criterion {criterion}")
        for name, passed in checks:
            tr.write_line(f"        {'pass' if passed else 'FAIL'}  {name}")
