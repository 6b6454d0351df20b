import pytest


def pytest_configure(config):
    config.addinivalue_line("markers", "stretch: long-running stretch targets")


@pytest.fixture()
def tmp_cache(tmp_path):
    return tmp_path / "cache"
