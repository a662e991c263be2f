import contextlib
import json
import os
import sys
import time

import pytest

sys.path.insert(0, os.path.dirname(__file__))

from skewcat import cli  # noqa: E402

FIXTURE_DIR = os.path.join(os.path.dirname(cli.__file__), "fixtures")
MUTATION_DIR = os.path.join(FIXTURE_DIR, "mutations")

_runs = {}
ACCEPTANCE = {}


def fixture_file(name):
    return os.path.join(FIXTURE_DIR, name + ".json")


def load(name):
    with open(fixture_file(name), encoding="utf-8") as fh:
        return json.load(fh)


class Run:
    """One in-process check of a bundled fixture, reports keyed by suite."""

    def __init__(self, name, suites=None):
        self.doc = load(name)
        names = suites or cli.default_suites(self.doc)
        t0 = time.perf_counter()
        self.results = cli.run_check(self.doc, list(names), jobs=1)
        self.elapsed = time.perf_counter() - t0
        self.by_suite = {r["suite"]: r for r in self.results}

    def __getitem__(self, suite):
        return self.by_suite[suite]

    def timing(self, *suites):
        return sum(self.by_suite[s]["timing"] for s in suites)


def fixture_run(name):
    """Bundled fixtures are checked at most once per session."""
    if name not in _runs:
        _runs[name] = Run(name)
    return _runs[name]


@pytest.fixture(scope="session")
def runs():
    return fixture_run


@contextlib.contextmanager
def criterion(number, text):
    ok = False
    try:
        yield
        ok = True
    finally:
        ACCEPTANCE[number] = (ok, text)
        print("criterion %2d %s: %s" % (number, "PASS" if ok else "FAIL", text))


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        ok, text = ACCEPTANCE[n]
        terminalreporter.write_line("criterion %2d %s: %s" % (n, "PASS" if ok else "FAIL", text))
