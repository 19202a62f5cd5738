import pytest

_ACCEPTANCE = []


@pytest.fixture
def criterion(request):
    """Record one pass/fail line for an acceptance criterion."""
    lines = []
    yield lines.append
    ok = not getattr(request.node, "_failed", False)
    detail = "; ".join(lines)
    _ACCEPTANCE.append(f"{request.node.name}: {'PASS' if ok else 'FAIL'}" + (f" ({detail})" if detail else ""))


@pytest.hookimpl(wrapper=True)
def pytest_runtest_makereport(item, call):
    report = yield
    if report.when == "call" and report.failed:
        item._failed = True
    return report


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in _ACCEPTANCE:
            terminalreporter.write_line(line)
