import pytest

_acceptance: dict[str, tuple[str, str]] = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    if not item.module.__name__.endswith("test_acceptance"):
        return
    if report.when == "call" or (report.when == "setup" and report.failed):
        doc = (item.function.__doc__ or item.name).strip().splitlines()[0]
        _acceptance[item.name] = (doc, "PASS" if report.passed else "FAIL")


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for doc, status in _acceptance.values():
        terminalreporter.write_line(f"[{status}] {doc}")
