import os

import pytest
from hypothesis import HealthCheck, settings

from quarticdyn.resultants import Pipeline

settings.register_profile("repo", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("repo")


@pytest.fixture(scope="session")
def cache_dir(tmp_path_factory):
    return tmp_path_factory.mktemp("resultant-cache")


@pytest.fixture(scope="session")
def pipeline(cache_dir):
    """One pipeline shared by the whole session so R_3 is computed once."""
    return Pipeline(cache_dir=str(cache_dir), max_level=4)


@pytest.fixture(autouse=True)
def _isolated_cache_env(monkeypatch, cache_dir):
    monkeypatch.setenv("QUARTICDYN_CACHE_DIR", str(cache_dir))


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1])):
        terminalreporter.write_line(line)
