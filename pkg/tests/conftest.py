import pytest

_results: dict[int, tuple[str, str, str]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): numbered acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None or report.when != "call":
        return
    number, title = mark.args
    reason = ""
    if report.failed:
        text = str(getattr(call.excinfo, "value", "")) if call.excinfo else ""
        reason = text.strip().splitlines()[0] if text.strip() else "assertion failed"
    _results[number] = (title, "PASS" if report.passed else "FAIL", reason)


def pytest_terminal_summary(terminalreporter):
    if not _results:
        return
    terminalreporter.write_sep("=", "acceptance criteria")
    for number in sorted(_results):
        title, verdict, reason = _results[number]
        line = f"criterion {number:>2}: {verdict}  {title}"
        if reason:
            line += f"  [{reason}]"
        terminalreporter.write_line(line)
