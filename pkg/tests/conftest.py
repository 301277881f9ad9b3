def pytest_terminal_summary(terminalreporter, exitstatus, config):
    """One line per acceptance check at the end of the run."""
    tr = terminalreporter
    rows = []
    for status in ("passed", "failed", "xfailed", "xpassed", "error"):
        for rep in tr.stats.get(status, []):
            nodeid = getattr(rep, "nodeid", "")
            if "test_acceptance.py" not in nodeid:
                continue
            name = nodeid.split("::")[-1]
            rows.append((name, status))
    if not rows:
        return
    tr.write_sep("=", "acceptance criteria")
    label = {"passed": "PASS", "failed": "FAIL",
             "xfailed": "XFAIL (documented paper-text defect)",
             "xpassed": "XPASS (unexpected)", "error": "ERROR"}
    for name, status in sorted(rows):
        tr.write_line("%-58s %s" % (name, label[status]))
