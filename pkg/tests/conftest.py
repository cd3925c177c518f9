_acceptance = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance: one test per acceptance criterion")


def pytest_runtest_logreport(report):
    if "test_acceptance.py::" not in report.nodeid:
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        props = dict(report.user_properties)
        _acceptance[report.nodeid] = (report.outcome, props.get("summary", ""), props.get("failures", []))


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for nodeid, (outcome, summary, failures) in _acceptance.items():
        name = nodeid.split("::")[-1].removeprefix("test_")
        mark = "PASS" if outcome == "passed" else "FAIL"
        terminalreporter.write_line(f"{mark}  {name}  ({summary})")
        for f in failures:
            terminalreporter.write_line(f"        {f}")
