import pytest

_results = {}
_notes = {}


@pytest.fixture
def report(request):
    """Attach a line of measured output to the current acceptance criterion."""
    marker = request.node.get_closest_marker("criterion")
    key = marker.args[0] if marker else request.node.name

    def add(line):
        _notes.setdefault(key, []).append(str(line))

    return add


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    number, title = marker.args
    failed = rep.failed
    if rep.when == "call" or failed:
        prev = _results.get(number, (title, True))
        _results[number] = (title, prev[1] and not failed)


def pytest_terminal_summary(terminalreporter):
    if not _results:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for number in sorted(_results):
        title, ok = _results[number]
        tr.write_line(f"[{'PASS' if ok else 'FAIL'}] C{number:<2} {title}")
        for line in _notes.get(number, []):
            tr.write_line(f"        {line}")
