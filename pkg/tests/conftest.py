import numpy as np
import pytest

from satsim import builtin_config, sample_qualities

_ACCEPTANCE = []


@pytest.fixture
def criterion(request):
    """Record one acceptance line; the test's own assertions decide pass/fail."""
    name = request.node.name

    class _Recorder:
        detail = ""

    rec = _Recorder()
    yield rec
    outcome = getattr(request.node, "rep_call", None)
    passed = outcome is not None and outcome.passed
    _ACCEPTANCE.append((name, passed, rec.detail))


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    if rep.when == "call":
        item.rep_call = rep


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name, passed, detail in _ACCEPTANCE:
        terminalreporter.write_line(f"{'PASS' if passed else 'FAIL'}  {name}  {detail}")


@pytest.fixture(scope="session")
def illustrative():
    return builtin_config("illustrative")


@pytest.fixture(scope="session")
def illustrative_qualities(illustrative):
    return sample_qualities(illustrative.quality, illustrative.market.B, illustrative.seed)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
