import pytest
from hypothesis import settings

from maxchain.acceptance import lattice_of

settings.register_profile("ci", max_examples=60, deadline=None)
settings.load_profile("ci")


@pytest.fixture(autouse=True)
def _private_cache(tmp_path_factory, monkeypatch):
    monkeypatch.setenv("MAXCHAIN_CACHE_DIR", str(tmp_path_factory.getbasetemp() / "cache"))


@pytest.fixture(scope="session")
def lat():
    """Memoised lattice builder keyed by spec text."""
    return lattice_of
