import logging

import numpy as np
import pytest

from mvmodal.config import DEFAULT_MODEL_CAP, load_settings, to_boolean
from mvmodal.logging_setup import PPrintForLogging, setup_loggers
from mvmodal.search.msg import SearchBudget


@pytest.mark.parametrize(
    "value, expected",
    [
        ("yes", True),
        ("ON", True),
        ("1", True),
        (True, True),
        ("off", False),
        ("", False),
        ("No", False),
        (False, False),
        ("maybe", None),
        (None, None),
    ],
)
def test_to_boolean(value, expected):
    assert to_boolean(value) is expected


def test_default_settings():
    settings = load_settings({})
    assert settings.log_level == "WARNING"
    assert settings.jobs == 1
    assert settings.model_cap == DEFAULT_MODEL_CAP
    assert settings.constants is False


def test_settings_from_environment():
    environ = {
        "MVMODAL_LOG_LEVEL": "debug",
        "MVMODAL_JOBS": "4",
        "MVMODAL_MODEL_CAP": "",
        "MVMODAL_CONSTANTS": "yes",
    }
    settings = load_settings(environ)
    assert (settings.log_level, settings.jobs, settings.model_cap, settings.constants) == ("DEBUG", 4, None, True)


@pytest.mark.parametrize(
    "environ",
    [
        {"MVMODAL_LOG_LEVEL": "LOUD"},
        {"MVMODAL_JOBS": "zero"},
        {"MVMODAL_JOBS": "0"},
        {"MVMODAL_MODEL_CAP": "-5"},
        {"MVMODAL_CONSTANTS": "sometimes"},
    ],
)
def test_bad_settings(environ):
    with pytest.raises(ValueError):
        load_settings(environ)


def test_setup_loggers(capsys):
    setup_loggers(log_level="INFO", name="mvmodal.test")
    logger = logging.getLogger("mvmodal.test")
    logger.info("visible")
    logger.debug("hidden")
    out = capsys.readouterr().out
    assert "visible" in out
    assert "hidden" not in out
    # reconfiguring replaces the handler
    setup_loggers(log_level="WARNING", name="mvmodal.test")
    assert len(logger.handlers) == 1


def test_pprint_for_logging():
    assert str(PPrintForLogging(list(range(20)), max_list_size=3)) == "[0, 1, 2, '...']"
    assert str(PPrintForLogging(np.array([[0, 1], [2, 2]]))) == "[[0, 1], [2, 2]]"
    budget = SearchBudget(max_worlds=2, model_cap=None)
    assert str(PPrintForLogging(budget)) == "{'max_worlds': 2, 'min_worlds': 1, 'model_cap': None, 'jobs': 1}"
    text = str(PPrintForLogging({"long": "x" * 100}, max_chars_in_str=10))
    assert "xxxxx ...\\n... xxxxx" in text
