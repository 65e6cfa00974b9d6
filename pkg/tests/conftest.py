"""Prints one PASS/FAIL line per acceptance criterion at the end of the run."""

_results: dict[int, tuple[str, list[bool]]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


def pytest_runtest_makereport(item, call):
    marker = item.get_closest_marker("criterion")
    if marker is None or call.when != "call":
        return
    number, title = marker.args
    _results.setdefault(number, (title, []))[1].append(call.excinfo is None)


def pytest_terminal_summary(terminalreporter):
    if not _results:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_results):
        title, outcomes = _results[number]
        status = "PASS" if all(outcomes) else "FAIL"
        terminalreporter.write_line(f"{status}  criterion {number:2d}: {title} ({len(outcomes)} checks)")
