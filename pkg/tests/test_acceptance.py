"""Exit criteria; each test prints a PASS/FAIL line regardless of pytest capture."""
import pytest

from maxchain import acceptance


def _run(fn, pytestconfig):
    result = fn()
    capman = pytestconfig.pluginmanager.getplugin("capturemanager")
    with capman.global_and_fixture_disabled():
        print("\n" + result.line(), flush=True)
    assert result.passed, result.detail


@pytest.mark.parametrize("number", [k for k in acceptance.CRITERIA if k != 10])
def test_criterion(number, pytestconfig):
    _run(acceptance.CRITERIA[number], pytestconfig)


@pytest.mark.slow
def test_criterion_10_stretch(pytestconfig):
    _run(acceptance.CRITERIA[10], pytestconfig)
