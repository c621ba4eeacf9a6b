import pytest

_ACCEPTANCE: dict[int, list[tuple[bool, str]]] = {}


@pytest.fixture
def criterion():
    """``criterion(number, passed, detail)`` records one gate for the acceptance summary."""

    def record(number: int, passed: bool, detail: str) -> bool:
        _ACCEPTANCE.setdefault(number, []).append((bool(passed), detail))
        return bool(passed)

    return record


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_ACCEPTANCE):
        gates = _ACCEPTANCE[number]
        ok = all(p for p, _ in gates)
        detail = "; ".join(d for _, d in gates)
        terminalreporter.write_line(f"criterion {number}: {'PASS' if ok else 'FAIL'}  {detail}")
