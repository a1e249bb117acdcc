import pytest

_criteria = []


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    if rep.when != "call":
        return
    label = getattr(item.function, "criterion", None)
    if label is not None:
        _criteria.append((label, rep.passed))


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for label, ok in sorted(_criteria):
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {label}")
