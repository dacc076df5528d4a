import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from brunnian.families import corpus  # noqa: E402

CORPUS = corpus()


@pytest.fixture(scope="session")
def corpus_diagrams():
    return CORPUS


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.summary_lines():
        terminalreporter.write_line(line)
