import sys


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(mod.TITLES):
        state = mod.RESULTS.get(n)
        word = "not run" if state is None else ("PASS" if state else "FAIL")
        terminalreporter.write_line(f"criterion {n:2d}: {word:7s} {mod.TITLES[n]}")
