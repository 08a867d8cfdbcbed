import re


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    """Print one pass/fail line per acceptance criterion."""
    rows = []
    for outcome in ("passed", "failed", "error"):
        for rep in terminalreporter.stats.get(outcome, []):
            nodeid = getattr(rep, "nodeid", "")
            if "test_acceptance.py::test_criterion_" not in nodeid:
                continue
            if getattr(rep, "when", "call") != "call" and outcome == "passed":
                continue
            m = re.search(r"test_criterion_(\d+)_?(\w*)", nodeid)
            if not m:
                continue
            num = int(m.group(1))
            label = m.group(2).replace("_", " ")
            rows.append((num, label, "PASS" if outcome == "passed" else "FAIL"))
    if not rows:
        return
    terminalreporter.write_sep("-", "acceptance criteria")
    for num, label, verdict in sorted(set(rows)):
        terminalreporter.write_line(f"criterion {num} ({label}): {verdict}")
