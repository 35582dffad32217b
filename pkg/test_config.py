import configparser

import pytest

import saxl_graphs.config as cfg
import saxl_graphs.exceptions as sx_e


def test_load_creates_file(config_home):
    cfg.load()
    assert (config_home / "config.ini").exists()
    config = configparser.ConfigParser()
    config.read(config_home / "config.ini")
    assert config["DEFAULT"]["degree_cap"] == "20000"
    assert cfg.snapshot()["seed"] == 1


def test_set_value_persists(config_home):
    cfg.load()
    cfg.set_value("seed", 9)
    assert cfg.SEED == 9
    cfg.override(seed=1)
    cfg.load()
    assert cfg.SEED == 9
    config = configparser.ConfigParser()
    config.read(config_home / "config.ini")
    assert config["USER"]["seed"] == "9"


def test_user_section_overrides_default(config_home):
    config_home.mkdir()
    (config_home / "config.ini").write_text("[DEFAULT]\nthreads = 1\n\n[USER]\nthreads = 4\n", encoding="utf-8")
    cfg.load()
    assert cfg.THREADS == 4
    assert cfg.MC_SAMPLES == 10000


def test_unknown_keys(config_home):
    cfg.load()
    with pytest.raises(sx_e.InvalidConfigKey):
        cfg.set_value("colour", 3)
    with pytest.raises(sx_e.InvalidConfigKey):
        cfg.override(colour=3)


def test_override_ignores_none():
    cfg.override(degree_cap=50, seed=None)
    snapshot = cfg.snapshot()
    assert snapshot["degree_cap"] == 50
    assert set(snapshot) == {
        "degree_cap",
        "group_order_cap",
        "tuple_cap",
        "irredundant_degree_cap",
        "seed",
        "threads",
        "mc_samples",
    }
