import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "qplab",
    deadline=None,
    suppress_health_check=[HealthCheck.filter_too_much, HealthCheck.too_slow],
)
settings.load_profile("qplab")

# ---------------------------------------------------------------------------
# One summary line per acceptance criterion
# ---------------------------------------------------------------------------

_CRITERIA: dict[int, list] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n, title): acceptance criterion number and title")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    n, title = marker.args
    entry = _CRITERIA.setdefault(n, [title, True, False])
    if rep.when == "call":
        entry[2] = True
    if rep.failed:
        entry[1] = False


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_CRITERIA):
        title, ok, ran = _CRITERIA[n]
        status = "PASS" if ok and ran else "FAIL"
        terminalreporter.write_line(f"criterion {n:>2}: {status}  {title}")
