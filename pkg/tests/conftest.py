from __future__ import annotations

import pytest

from superdual import coxeter_kl

_LINES = pytest.StashKey[list]()


@pytest.fixture(autouse=True)
def _isolated_cache(tmp_path, monkeypatch):
    # keep KL caches out of the user's home during tests
    monkeypatch.setenv(coxeter_kl.CACHE_ENV, str(tmp_path / "kl-cache"))
    coxeter_kl.set_cache_dir(tmp_path / "kl-cache")
    yield
    coxeter_kl.flush_caches()


@pytest.fixture
def acceptance_log(request) -> list[tuple[int, str]]:
    return request.config.stash.setdefault(_LINES, [])


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = config.stash.get(_LINES, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for _, line in sorted(lines):
            terminalreporter.write_line(line)
