import functools

from hypothesis import HealthCheck, settings

from poincare_deform.suites import run_suite

settings.register_profile(
    "default", deadline=None, max_examples=40,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.function_scoped_fixture])
settings.load_profile("default")

ACCEPTANCE_LINES: dict[int, str] = {}


@functools.lru_cache(maxsize=None)
def cached_suite(name: str, order: int | None = None, seed: int = 0):
    """Suite reports are deterministic; run each configuration once per session."""
    return run_suite(name, order, seed)


def checks_by_id(report) -> dict:
    return {c.id: c for c in report.checks}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[k])
