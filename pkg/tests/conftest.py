"""Shared pytest plumbing.

Appends an "acceptance criteria" section to the terminal summary with one
verdict line per criterion test, so a plain ``pytest`` run always shows
the per-criterion outcome.
"""


def pytest_terminal_summary(terminalreporter):
    verdicts = []
    for key, verdict in (("passed", "PASS"), ("failed", "FAIL")):
        for rep in terminalreporter.stats.get(key, []):
            if getattr(rep, "when", "call") != "call":
                continue
            if "test_acceptance.py" not in rep.nodeid:
                continue
            verdicts.append((rep.nodeid.split("::")[-1], verdict))
    if not verdicts:
        return
    terminalreporter.section("acceptance criteria")
    for name, verdict in sorted(verdicts):
        terminalreporter.write_line(f"{verdict}  {name}")
