import pytest

_acceptance: list[tuple[str, str]] = []


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    if item.module.__name__.endswith("test_acceptance") and report.when == "call":
        label = (item.function.__doc__ or item.name).strip().splitlines()[0]
        _acceptance.append(("PASS" if report.passed else "FAIL", label))


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for status, label in _acceptance:
        terminalreporter.write_line(f"[{status}] {label}")
