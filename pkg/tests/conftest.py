import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from oracles import ZOO  # noqa: E402
from otx.serialize import load_machine  # noqa: E402


@pytest.fixture(scope="session")
def zoo():
    return {name: load_machine(name) for name in ZOO}


@pytest.fixture(scope="session")
def machine(zoo):
    extra = {}

    def get(name):
        if name in zoo:
            return zoo[name]
        if name not in extra:
            extra[name] = load_machine(name)
        return extra[name]
    return get


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(k for k in results if isinstance(k, int)):
        terminalreporter.write_line(results[key])
