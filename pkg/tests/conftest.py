import warnings

import pytest

from mfjump.sde import GammaSpec, HypothesisWarning

_ACCEPTANCE = {}


@pytest.fixture
def ramp():
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", HypothesisWarning)
        return GammaSpec.clipped_ramp()


@pytest.fixture
def record():
    """Store a one-line summary for an acceptance criterion."""
    def _record(number, name, passed, detail):
        _ACCEPTANCE[number] = (name, passed, detail)
    return _record


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_ACCEPTANCE):
        name, passed, detail = _ACCEPTANCE[number]
        terminalreporter.write_line(
            f"criterion {number:2d} {'PASS' if passed else 'FAIL'}  {name}: {detail}")
