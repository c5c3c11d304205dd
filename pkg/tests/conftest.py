import re
import sys
from collections import OrderedDict
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

CRITERIA = OrderedDict([
    (1, "single-beam bound: alpha_max and radius for R_rx = 2 m and 4 m"),
    (2, "energy frontier: m_upper_bound at V=10"),
    (3, "optimal configuration at W=80 (E>=50) and W=40 (E=42, V=12)"),
    (4, "closed-form extended radius vs 3D cone oracle, >= 500 points"),
    (5, "principal border power strictly decreasing on a 0.1 deg grid"),
    (6, "optimal configuration identical for every E_solar >= 50 kWh"),
    (7, "design pipeline invariants on 19 seeded scenarios"),
    (8, "W=80 links <= W=40 links; mFSO K < single-FSO K for >= 1000 nodes"),
])

_outcomes: dict[int, list[tuple[str, str]]] = {}


def pytest_runtest_logreport(report):
    match = re.search(r"test_acceptance\.py::test_c(\d+)_(\w+)", report.nodeid)
    if not match:
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        _outcomes.setdefault(int(match.group(1)), []).append((match.group(2), report.outcome))


def pytest_terminal_summary(terminalreporter):
    if not _outcomes:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for num, text in CRITERIA.items():
        results = _outcomes.get(num)
        if not results:
            tr.write_line(f"criterion {num}: NOT RUN  {text}")
            continue
        failed = [name for name, outcome in results if outcome != "passed"]
        verdict = "PASS" if not failed else "FAIL"
        detail = f"  [failed: {', '.join(failed)}]" if failed else ""
        tr.write_line(f"criterion {num}: {verdict}  {text}{detail}")
