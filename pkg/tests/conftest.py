import pytest

import acceptance_log


def pytest_addoption(parser):
    parser.addoption("--long", action="store_true", default=False, help="run tests marked long")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--long"):
        return
    skip = pytest.mark.skip(reason="needs --long")
    for item in items:
        if "long" in item.keywords:
            item.add_marker(skip)


def pytest_terminal_summary(terminalreporter):
    if not acceptance_log.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(acceptance_log.RESULTS):
        terminalreporter.write_line(acceptance_log.RESULTS[key])
