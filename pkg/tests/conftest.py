from __future__ import annotations

import pytest
from hypothesis import settings

settings.register_profile("default", deadline=None, max_examples=50)
settings.load_profile("default")


@pytest.fixture
def acceptance(request) -> list[str]:
    """Lines recorded by the acceptance tests, printed in the terminal summary."""
    if not hasattr(request.config, "_acceptance"):
        request.config._acceptance = []
    return request.config._acceptance


def pytest_terminal_summary(terminalreporter, config):
    lines = getattr(config, "_acceptance", [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
