ACCEPTANCE_LINES = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance")
    for name in sorted(ACCEPTANCE_LINES, key=lambda n: ACCEPTANCE_LINES[n][0]):
        terminalreporter.write_line(ACCEPTANCE_LINES[name][1])
