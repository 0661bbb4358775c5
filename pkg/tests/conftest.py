import pytest

# criterion number -> (title, outcome); filled in by test_acceptance
ACCEPTANCE = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None or not (rep.when == "call" or (rep.when == "setup" and rep.failed)):
        return
    num, title = marker.args
    status = "PASS" if rep.passed else "FAIL"
    ACCEPTANCE[num] = (title, status, rep.duration)


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(num, title): acceptance criterion")


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(ACCEPTANCE):
        title, status, secs = ACCEPTANCE[num]
        terminalreporter.write_line(f"criterion {num}: {status}  {title}  ({secs:.2f} s)")
