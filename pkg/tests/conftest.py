import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from rov.params import ClassBParams, ClassPParams  # noqa: E402
from rov.presets import all_presets, get_preset  # noqa: E402


@pytest.fixture
def fig1_b() -> ClassBParams:
    return get_preset(1, "B").params


@pytest.fixture
def fig1_p() -> ClassPParams:
    return get_preset(1, "P").params


@pytest.fixture(params=all_presets(), ids=lambda pr: pr.name)
def preset(request):
    return request.param


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    order = sorted(results, key=lambda tag: int(tag.split("-")[1]))
    for tag in order:
        terminalreporter.write_line(results[tag])
