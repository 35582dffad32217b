import pytest

import saxl_graphs.config as cfg


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: cases on groups of degree 144 and above")


@pytest.fixture(autouse=True)
def restore_config():
    """Undo in-memory configuration changes made by a test."""
    saved = cfg.snapshot()
    saved_fixture_path = cfg.FIXTURE_PATH
    yield
    cfg.override(**saved)
    cfg.FIXTURE_PATH = saved_fixture_path


@pytest.fixture
def config_home(tmp_path, monkeypatch):
    """Point the config.ini file at a temporary directory."""
    data_path = tmp_path / ".saxl_graphs"
    monkeypatch.setattr(cfg, "DATA_PATH", str(data_path))
    monkeypatch.setattr(cfg, "CONFIG_PATH", str(data_path / "config.ini"))
    return data_path
