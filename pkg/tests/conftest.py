ACCEPTANCE_RESULTS = []


def record_acceptance(number: int, description: str, ok: bool, detail: str,
                      seconds: float) -> None:
    ACCEPTANCE_RESULTS.append((number, description, ok, detail, seconds))


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number, desc, ok, detail, seconds in sorted(ACCEPTANCE_RESULTS):
        status = "PASS" if ok else "FAIL"
        terminalreporter.write_line(
            f"[{status}] criterion {number:2d} ({desc}): {detail} "
            f"[{seconds:.2f}s]"
        )
