import pytest

_ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def verdict_line(request):
    """Record one PASS/FAIL line for an acceptance criterion; printed in the terminal summary."""
    state = {"text": ""}

    def set_text(text: str) -> None:
        state["text"] = text

    yield set_text
    rep = getattr(request.node, "rep_call", None)
    ok = rep is not None and rep.passed
    line = f"{'PASS' if ok else 'FAIL'}  {state['text'] or request.node.name}"
    print(line)
    _ACCEPTANCE_LINES.append(line)


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    if rep.when == "call":
        item.rep_call = rep


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in _ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
