import pytest

# Filled by tests marked ``acceptance`` via the ``criterion`` fixture.
_RESULTS: dict[str, list] = {}


@pytest.fixture
def criterion(request):
    """Record a named acceptance check; its pass/fail line prints at the end."""

    def record(label: str, ok, detail: str = ""):
        # ok=None marks a check that could not be run here
        _RESULTS.setdefault(label, []).append((ok if ok is None else bool(ok), detail))
        return ok

    return record


def pytest_terminal_summary(terminalreporter):
    if not _RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for label in sorted(_RESULTS, key=lambda s: (int(s.rstrip("abcdefgh")), s)):
        checks = _RESULTS[label]
        states = [c for c, _ in checks]
        status = "FAIL" if False in states else "SKIP" if None in states else "PASS"
        detail = "; ".join(d for _, d in checks if d)
        terminalreporter.write_line(f"{status}  criterion {label}  {detail}")


from hypothesis import settings  # noqa: E402

settings.register_profile("stabtime", deadline=None)
settings.load_profile("stabtime")
