"""
Settings read from the environment.

===================== =========================================================
Variable              Meaning
===================== =========================================================
``MVMODAL_LOG_LEVEL`` ``DEBUG``, ``INFO``, ``WARNING``, ``ERROR`` or ``CRITICAL``
``MVMODAL_JOBS``      default number of search workers
``MVMODAL_MODEL_CAP`` default cap on models visited by one search (empty: none)
``MVMODAL_CONSTANTS`` default for canonical constants (boolean words)
===================== =========================================================
"""
import os
from typing import Optional

from pydantic import BaseModel

LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL")
DEFAULT_MODEL_CAP = 200_000_000


def to_boolean(value):
    """
    Returns ``True`` or ``False`` if ``value`` is found in one of the lists of supported values.
    Otherwise returns ``None`` (typically means that the value is not set).
    """
    v = value.lower() if isinstance(value, str) else value
    if v in (True, "y", "yes", "t", "true", "on", "1"):
        return True
    elif v in (False, "", "n", "no", "f", "false", "off", "0"):
        return False
    else:
        return None


class Settings(BaseModel):
    log_level: str = "WARNING"
    jobs: int = 1
    model_cap: Optional[int] = DEFAULT_MODEL_CAP
    constants: bool = False


def _positive_int(name, raw):
    try:
        value = int(raw)
    except ValueError:
        raise ValueError(f"Value {raw!r} is not an integer. Check value of {name!r} environment variable")
    if value < 1:
        raise ValueError(f"Value {value} must be positive. Check value of {name!r} environment variable")
    return value


def load_settings(environ=None):
    """
    Build :class:`Settings` from environment variables.

    Parameters
    ----------
    environ: Mapping (optional)
        Source of the variables, ``os.environ`` by default.

    Returns
    -------
    Settings

    Raises
    ------
    ValueError
        A variable is set to an unsupported value.
    """
    environ = os.environ if environ is None else environ

    log_level = environ.get("MVMODAL_LOG_LEVEL", "WARNING").upper()
    if log_level not in LOG_LEVELS:
        raise ValueError(
            f"Logging level value {log_level!r} is not supported. "
            "Check value of 'MVMODAL_LOG_LEVEL' environment variable"
        )

    jobs = _positive_int("MVMODAL_JOBS", environ.get("MVMODAL_JOBS", "1"))

    raw_cap = environ.get("MVMODAL_MODEL_CAP", str(DEFAULT_MODEL_CAP)).strip()
    model_cap = _positive_int("MVMODAL_MODEL_CAP", raw_cap) if raw_cap else None

    constants = to_boolean(environ.get("MVMODAL_CONSTANTS", "off"))
    if constants is None:
        raise ValueError(
            f"Value {environ.get('MVMODAL_CONSTANTS')!r} is not a boolean. "
            "Check value of 'MVMODAL_CONSTANTS' environment variable"
        )

    return Settings(log_level=log_level, jobs=jobs, model_cap=model_cap, constants=constants)
