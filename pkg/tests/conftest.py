import os
import random
import sys

import pytest

sys.path.insert(0, os.path.dirname(__file__))

from gkm.exactalg import Polynomial, monomials  # noqa: E402

_criteria = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.failed):
        return
    marker = _criteria.get(report.nodeid)
    if marker is None:
        return
    num, title, _ = marker
    _criteria[report.nodeid] = (num, title, report.passed)


def pytest_collection_modifyitems(items):
    for item in items:
        m = item.get_closest_marker("criterion")
        if m is not None:
            _criteria[item.nodeid] = (m.args[0], m.args[1], None)


def pytest_terminal_summary(terminalreporter):
    rows = sorted(v for v in _criteria.values())
    if not rows:
        return
    terminalreporter.section("acceptance criteria")
    for num, title, ok in rows:
        verdict = "PASS" if ok else ("FAIL" if ok is False else "NOT RUN")
        terminalreporter.write_line(f"criterion {num:2d} {verdict}  {title}")


def random_poly(rng, n, m, span=3):
    """Homogeneous polynomial of degree m with small integer coefficients."""
    if m < 0:
        return Polynomial.zero(n)
    terms = {e: rng.randint(-span, span) for e in monomials(n, m)}
    return Polynomial(n, terms)


def random_combination(rng, classes, span=3):
    total = None
    for f in classes:
        c = rng.randint(-span, span)
        if c:
            total = f * c if total is None else total + f * c
    if total is None and classes:
        total = classes[0]
    return total


@pytest.fixture
def rng():
    return random.Random(12345)
