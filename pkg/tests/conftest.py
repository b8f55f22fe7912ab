import pytest

_results = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(num, title): acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    m = item.get_closest_marker("criterion")
    if m is None or rep.when != "call":
        return
    num, title = m.args
    msg = ""
    if rep.failed and call.excinfo is not None:
        msg = str(call.excinfo.value).splitlines()[0][:160]
    _results.setdefault(num, []).append((title, rep.passed, rep.duration, msg))


def pytest_terminal_summary(terminalreporter):
    if not _results:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for num in sorted(_results):
        for title, ok, dur, msg in _results[num]:
            line = "AC%-2d %-58s %s  %.1fs" % (num, title, "PASS" if ok else "FAIL", dur)
            if msg:
                line += "  " + msg
            tr.write_line(line)
