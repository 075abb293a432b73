import pytest
from hypothesis import HealthCheck, settings

# property tests are reproducible: fixed derivation of examples, no shared database
settings.register_profile("pinned", derandomize=True, database=None, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("pinned")

_ACCEPTANCE = []


@pytest.fixture
def criterion(request):
    """Record a named acceptance criterion; the verdict follows the test outcome."""
    entry = {"nodeid": request.node.nodeid, "label": None, "notes": []}
    _ACCEPTANCE.append(entry)

    def record(label, **notes):
        if label:
            entry["label"] = label
        entry["notes"].append(", ".join(f"{k}={v}" for k, v in notes.items()))

    return record


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    if rep.when == "call" or (rep.when == "setup" and rep.failed):
        for e in _ACCEPTANCE:
            if e["nodeid"] == item.nodeid:
                e["passed"] = rep.passed


def pytest_terminal_summary(terminalreporter):
    rows = [e for e in _ACCEPTANCE if e["label"]]
    if not rows:
        return
    terminalreporter.section("acceptance criteria")
    for e in rows:
        verdict = "PASS" if e.get("passed") else "FAIL"
        notes = "; ".join(n for n in e["notes"] if n)
        terminalreporter.write_line(f"{verdict}  {e['label']}" + (f"  ({notes})" if notes else ""))
