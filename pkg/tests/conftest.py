_LINES: dict[int, str] = {}


def record_acceptance(number, name, ok, elapsed, limit, note=""):
    verdict = "PASS" if ok else "FAIL"
    line = f"criterion {number} {name}: {verdict} ({elapsed:.2f} s / limit {limit:g} s)"
    if note:
        line += f"  {note}"
    _LINES[number] = line


def pytest_terminal_summary(terminalreporter):
    if _LINES:
        terminalreporter.section("acceptance criteria")
        for number in sorted(_LINES):
            terminalreporter.write_line(_LINES[number])
