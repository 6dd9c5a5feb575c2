"""Prints the acceptance scoreboard (one line per criterion) after the run."""


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    try:
        from test_acceptance import CRITERIA
    except ImportError:
        return
    results = {}
    for outcome in ("passed", "failed", "error"):
        for rep in terminalreporter.stats.get(outcome, []):
            nodeid = getattr(rep, "nodeid", "")
            if "test_acceptance" not in nodeid or getattr(rep, "when", "call") != "call":
                continue
            for name, (num, title) in CRITERIA.items():
                if nodeid.endswith(f"::{name}"):
                    results[num] = (outcome == "passed", title)
    if not results:
        return
    terminalreporter.write_line("")
    terminalreporter.write_line("acceptance criteria")
    for num in sorted(results):
        ok, title = results[num]
        status = "PASS" if ok else "FAIL"
        terminalreporter.write_line(f"  criterion {num:2d}: {status}  {title}")
