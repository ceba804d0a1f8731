import os
import sys

from hypothesis import HealthCheck, settings

sys.path.insert(0, os.path.dirname(__file__))

# fixed seeds everywhere: hypothesis replays the same examples on every run
settings.register_profile("fixed", derandomize=True, deadline=None, max_examples=40,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("fixed")


# ---------------------------------------------------------------------------
# acceptance summary: one line per criterion, whatever the verbosity

import pytest  # noqa: E402

_CRITERIA = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title, limit): acceptance criterion with a time limit in s")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None or rep.when != "call" and not (rep.when == "setup" and rep.failed):
        return
    number, title, limit = mark.args
    entry = _CRITERIA.setdefault(number, {"title": title, "limit": limit, "time": 0.0, "parts": []})
    entry["time"] += rep.duration
    if hasattr(rep, "wasxfail"):
        state = "xfail"
    else:
        state = "pass" if rep.passed else "fail"
    entry["parts"].append((item.name, state, getattr(rep, "wasxfail", "")))


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for n in sorted(_CRITERIA):
        e = _CRITERIA[n]
        states = [s for _, s, _ in e["parts"]]
        ok = all(s == "pass" for s in states) and e["time"] <= e["limit"]
        line = f"criterion {n:>2} {'PASS' if ok else 'FAIL'}  {e['title']}  ({e['time']:.1f} s of {e['limit']} s)"
        tr.write_line(line)
        for name, s, why in e["parts"]:
            if s != "pass":
                tr.write_line(f"    {s}: {name}" + (f" ({why})" if why else ""))
