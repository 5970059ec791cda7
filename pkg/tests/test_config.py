import json
import logging

import pytest
from rich.logging import RichHandler

from codecrypt_lab.config import LabConfig, config_dir, config_file
from codecrypt_lab.logs import PACKAGE_LOGGER, setup_logging


def test_defaults():
    cfg = LabConfig.load()
    assert cfg.seed == 2021
    assert cfg.enumeration_budget == 2**24
    assert cfg.output == "human"
    assert not config_file().exists()


def test_home_override(lab_home):
    assert config_dir() == lab_home


def test_update_persists():
    cfg = LabConfig()
    cfg.update(seed=7, output="json", not_a_field=1)
    again = LabConfig.load()
    assert (again.seed, again.output) == (7, "json")
    assert not hasattr(again, "not_a_field")


def test_unknown_and_broken_files_fall_back():
    config_dir().mkdir(parents=True)
    config_file().write_text(json.dumps({"seed": 3, "colour": "red"}))
    assert LabConfig.load().seed == 3
    config_file().write_text("{broken")
    assert LabConfig.load() == LabConfig()


def test_coerce():
    cfg = LabConfig()
    assert cfg.coerce("seed", "0x10") == 16
    assert cfg.coerce("time_budget_s", "2.5") == 2.5
    assert cfg.coerce("log_level", "DEBUG") == "DEBUG"
    with pytest.raises(KeyError):
        cfg.coerce("colour", "red")
    with pytest.raises(ValueError):
        cfg.coerce("seed", "many")


def test_setup_logging_installs_one_handler():
    logger = setup_logging("debug")
    setup_logging("WARNING")
    assert logger.name == PACKAGE_LOGGER
    assert logger.level == logging.WARNING
    assert sum(isinstance(h, RichHandler) for h in logger.handlers) == 1
    assert not logger.propagate
    setup_logging("nonsense")
    assert logger.level == logging.INFO
