import os

import pytest

ACCEPTANCE_RESULTS = {}


def pytest_addoption(parser):
    parser.addoption("--extended", action="store_true", default=False,
                     help="run extended acceptance checks (also enabled by SWGAMMA_EXTENDED=1)")


def extended_enabled(config):
    return config.getoption("--extended") or os.environ.get("SWGAMMA_EXTENDED", "") not in ("", "0")


def pytest_collection_modifyitems(config, items):
    if extended_enabled(config):
        return
    skip = pytest.mark.skip(reason="extended check: pass --extended or set SWGAMMA_EXTENDED=1")
    for item in items:
        if "extended" in item.keywords:
            item.add_marker(skip)


def pytest_configure(config):
    config.addinivalue_line("markers", "extended: long-running check, skipped by default")


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE_RESULTS):
        status, elapsed, budget = ACCEPTANCE_RESULTS[k]
        terminalreporter.write_line(f"criterion {k:>2}: {status} ({elapsed:.1f} s, budget {budget} s)")
