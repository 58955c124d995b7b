"""Prints a one-line verdict per acceptance criterion after each run."""

import re


def _criterion_key(name):
    m = re.search(r"criterion_(\d+)", name)
    return int(m.group(1)) if m else 99


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    verdicts = {}
    for status, label in (("passed", "PASS"), ("failed", "FAIL"), ("error", "FAIL")):
        for rep in terminalreporter.stats.get(status, []):
            nodeid = getattr(rep, "nodeid", "")
            if "test_acceptance.py::test_criterion_" in nodeid:
                verdicts[nodeid.split("::")[-1]] = label
    if not verdicts:
        return
    terminalreporter.write_sep("-", "acceptance criteria")
    for name in sorted(verdicts, key=_criterion_key):
        terminalreporter.write_line(f"{verdicts[name]}  {name}")
