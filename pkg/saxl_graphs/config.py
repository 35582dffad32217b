""" saxl_graphs configuration module. This module stores the computation caps, the engine seed and the thread count. The values are stored in the config.ini file in the user's home directory, which is created if it does not exist. A value in the USER section overrides the DEFAULT section. Command line flags change the in-memory values only, through override.

    Attributes:
        DATA_PATH (str): Path to the data directory.
        CONFIG_PATH (str): Path to the config.ini file.
        FIXTURE_PATH (str): Directory holding the bundled .gens fixtures.
        DEGREE_CAP (int): Largest degree a constructor may produce.
        GROUP_ORDER_CAP (int): Largest group whose elements may be streamed.
        TUPLE_CAP (int): Largest |Ω|^k for exact non-base probabilities.
        IRREDUNDANT_DEGREE_CAP (int): Largest degree for exhaustive irredundant-base searches.
        SEED (int): Seed of the engine's random number generators.
        THREADS (int): Worker threads for sharded searches.
        MC_SAMPLES (int): Default Monte Carlo sample count.
"""

import configparser
import logging
import os
from typing import Any

import saxl_graphs.exceptions as sx_e

logger = logging.getLogger(__name__)

DATA_PATH = os.path.join(os.path.expanduser("~"), ".saxl_graphs")
CONFIG_PATH = os.path.join(DATA_PATH, "config.ini")
FIXTURE_PATH = os.path.join(os.path.dirname(os.path.dirname(os.path.abspath(__file__))), "fixtures")

DEGREE_CAP = 20000
GROUP_ORDER_CAP = 10_000_000
TUPLE_CAP = 10_000_000
IRREDUNDANT_DEGREE_CAP = 24
SEED = 1
THREADS = 1
MC_SAMPLES = 10000

_DEFAULTS = {
    "degree_cap": "20000",
    "group_order_cap": "10000000",
    "tuple_cap": "10000000",
    "irredundant_degree_cap": "24",
    "seed": "1",
    "threads": "1",
    "mc_samples": "10000",
}

_GLOBALS = {
    "degree_cap": "DEGREE_CAP",
    "group_order_cap": "GROUP_ORDER_CAP",
    "tuple_cap": "TUPLE_CAP",
    "irredundant_degree_cap": "IRREDUNDANT_DEGREE_CAP",
    "seed": "SEED",
    "threads": "THREADS",
    "mc_samples": "MC_SAMPLES",
}


def _check_key(key: str) -> str:
    if key not in _GLOBALS:
        raise sx_e.InvalidConfigKey(f"Unknown configuration key {key!r}, expected one of {sorted(_GLOBALS)}")
    return _GLOBALS[key]


def load() -> None:
    """Load the configuration from the config.ini file. If the file does not exist, it is created with the default values."""
    config = configparser.ConfigParser()

    if not os.path.exists(DATA_PATH):
        os.makedirs(DATA_PATH)

    if not os.path.exists(CONFIG_PATH):
        config["DEFAULT"] = dict(_DEFAULTS)
        config["USER"] = {}
        with open(CONFIG_PATH, "w", encoding="utf-8") as configfile:
            config.write(configfile)

    config.read(CONFIG_PATH)
    if not config.has_section("USER"):
        config["USER"] = {}

    for key, name in _GLOBALS.items():
        raw = config["USER"].get(key, config["DEFAULT"].get(key, _DEFAULTS[key]))
        globals()[name] = int(raw)

    logger.info(
        "Configuration loaded: degree cap %d, group order cap %d, seed %d, threads %d",
        DEGREE_CAP,
        GROUP_ORDER_CAP,
        SEED,
        THREADS,
    )


def set_value(key: str, value: int) -> None:
    """Persist a configuration value in the USER section.

    Parameters:
        key (str): Configuration key, e.g. "degree_cap".
        value (int): New value.

    Raises:
        InvalidConfigKey: If the key is unknown.
    """
    name = _check_key(key)
    config = configparser.ConfigParser()
    config.read(CONFIG_PATH)
    if not config.has_section("USER"):
        config["USER"] = {}

    config["USER"][key] = str(int(value))
    with open(CONFIG_PATH, "w", encoding="utf-8") as configfile:
        config.write(configfile)
    globals()[name] = int(value)


def override(**values: Any) -> None:
    """Change in-memory configuration values without touching the config.ini file. None values are ignored.

    Parameters:
        **values: Keys as in the config.ini file.

    Raises:
        InvalidConfigKey: If a key is unknown.
    """
    for key, value in values.items():
        name = _check_key(key)
        if value is None:
            continue
        globals()[name] = int(value)
        logger.debug("Configuration override %s = %s", key, value)


def snapshot() -> dict[str, int]:
    """Return the current configuration values keyed as in the config.ini file."""
    return {key: int(globals()[name]) for key, name in _GLOBALS.items()}
