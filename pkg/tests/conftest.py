import sys


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.LINES:
        return
    lines = mod.summary_lines()
    terminalreporter.section("acceptance criteria")
    for line in lines:
        terminalreporter.write_line(line)
