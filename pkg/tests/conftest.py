import os

import pytest
from hypothesis import settings

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


@pytest.fixture(autouse=True, scope="session")
def _isolated_cache(tmp_path_factory):
    path = tmp_path_factory.mktemp("cache")
    old = os.environ.get("DERANGEMENT_CACHE_DIR")
    os.environ["DERANGEMENT_CACHE_DIR"] = str(path)
    yield path
    if old is None:
        os.environ.pop("DERANGEMENT_CACHE_DIR", None)
    else:
        os.environ["DERANGEMENT_CACHE_DIR"] = old


def pytest_terminal_summary(terminalreporter):
    mod = __import__("sys").modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(results):
        terminalreporter.write_line(results[num])
