import pytest

_ACCEPTANCE = []


@pytest.fixture
def criterion(request):
    """Record one acceptance line; the test body fills in the detail."""
    entry = {"name": request.node.name, "detail": "", "ok": None}
    _ACCEPTANCE.append(entry)

    def note(detail):
        entry["detail"] = detail

    yield note
    rep = getattr(request.node, "rep_call", None)
    entry["ok"] = bool(rep and rep.passed)


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    if rep.when == "call":
        item.rep_call = rep


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for e in _ACCEPTANCE:
        mark = "PASS" if e["ok"] else "FAIL"
        terminalreporter.write_line(f"[{mark}] {e['name']}: {e['detail']}")
