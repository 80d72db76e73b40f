import sys


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    """Echo the renderer acceptance pass/fail lines at the end of the run."""
    module = sys.modules.get("test_render_acceptance")
    results = getattr(module, "RESULTS", [])
    if not results:
        return
    terminalreporter.section("renderer acceptance criteria")
    for name, ok, detail in results:
        line = f"{'PASS' if ok else 'FAIL'} {name}"
        if detail:
            line += f" -- {detail}"
        terminalreporter.write_line(line)
