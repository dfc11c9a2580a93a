CRITERIA: dict[int, tuple[str, bool]] = {}


def record(number: int, title: str, ok: bool) -> None:
    CRITERIA[number] = (title, ok)
    print(f"criterion {number}: {'PASS' if ok else 'FAIL'} {title}")


def pytest_terminal_summary(terminalreporter):
    if not CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(CRITERIA):
        title, ok = CRITERIA[number]
        terminalreporter.write_line(f"criterion {number}: {'PASS' if ok else 'FAIL'} {title}")
