import re

_ACCEPTANCE = re.compile(r"test_acceptance_(\d+)")


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    """Emit one ACCEPTANCE n: PASS/FAIL line per gate criterion, past capture."""
    results = {}
    for outcome in ("passed", "failed", "error"):
        for rep in terminalreporter.stats.get(outcome, []):
            match = _ACCEPTANCE.search(getattr(rep, "nodeid", ""))
            if match and getattr(rep, "when", "call") == "call":
                results[int(match.group(1))] = outcome == "passed"
    for num in sorted(results):
        verdict = "PASS" if results[num] else "FAIL"
        terminalreporter.write_line(f"ACCEPTANCE {num}: {verdict}")
