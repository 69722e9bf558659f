from fractions import Fraction
from importlib import resources

import numpy as np
import pytest

from cgrkit.affine_ifs import parse_ifs_table


def bundled_table(name):
    return parse_ifs_table(resources.files("cgrkit.data").joinpath(f"{name}.ifs").read_text())


def points_in_open_middle_triangle(points):
    """Count points strictly inside the triangle (0,.5), (.5,.5), (.5,1), checked exactly."""
    half = Fraction(1, 2)
    hits = 0
    # cheap float prefilter with a margin, exact test on the survivors
    pts = np.asarray(points)
    near = (pts[:, 0] < 0.5 + 1e-9) & (pts[:, 1] > 0.5 - 1e-9) & (pts[:, 1] - pts[:, 0] < 0.5 + 1e-9)
    for x, y in pts[near].tolist():
        fx, fy = Fraction(x), Fraction(y)
        if fx < half and fy > half and fy - fx < half:
            hits += 1
    return hits


@pytest.fixture(scope="session")
def sierpinski():
    return bundled_table("sierpinski")


@pytest.fixture(scope="session")
def fern():
    return bundled_table("fern")


_ACCEPTANCE = {}


def pytest_runtest_logreport(report):
    props = dict(report.user_properties)
    if "criterion" not in props:
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        verdict = {"passed": "PASS", "failed": "FAIL", "skipped": "SKIP"}[report.outcome]
        detail = props.get("detail", "")
        if report.outcome == "skipped" and isinstance(report.longrepr, tuple):
            detail = report.longrepr[2]
        _ACCEPTANCE[props["criterion"]] = (verdict, detail)


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(_ACCEPTANCE, key=lambda k: int(k.split()[0])):
        verdict, detail = _ACCEPTANCE[key]
        terminalreporter.write_line(f"{verdict} criterion {key}: {detail}")
