"""
Package-wide defaults.

Values that may be tuned from the environment are read once at import time,
with a fallback for every one of them.
"""
import logging
import os
from pathlib import Path


__all__ = (
    'DEFAULT_AXIS_OFFSET', 'DEFAULT_DEADBAND', 'DEFAULT_COND_MAX',
    'ABORT_AFTER_ILL_CONDITIONED', 'MAX_GRID_POINTS', 'MAX_DURATION',
    'DEFAULT_ORACLE', 'LOG_LEVEL', 'DATA_DIR', 'shipped_config', 'log_level',
)

DEFAULT_AXIS_OFFSET = 0.1          # λ, meters
DEFAULT_DEADBAND = 1e-9            # meters / radians
DEFAULT_COND_MAX = 1e8
ABORT_AFTER_ILL_CONDITIONED = 10   # consecutive periods tolerated
MAX_GRID_POINTS = 10 ** 6
MAX_DURATION = 1e4                 # seconds

# detection oracle approximating a depth camera with a 0.3-3 m range
DEFAULT_ORACLE = {
    'range_min': 0.3,
    'range_max': 3.0,
    'fov_half_h': 43.0,
    'fov_half_v': 29.0,
    'incidence_max': 30.0,
}

LOG_LEVEL = os.environ.get('SERVOKIT_LOG', 'WARNING')

DATA_DIR = Path(__file__).resolve().parent.parent / 'data'


def log_level(name=None):
    """
    Numeric logging level for ``name`` (default: ``SERVOKIT_LOG``).

    >>> log_level('debug') == logging.DEBUG
    True
    >>> log_level('chatty') == logging.WARNING
    True
    """
    name = (name if name is not None else LOG_LEVEL).strip().upper()
    level = logging.getLevelName(name)
    if isinstance(level, int):
        return level
    logging.getLogger(__name__).warning("unknown log level %r, using WARNING", name)
    return logging.WARNING


def shipped_config(name):
    """Path of a config file shipped with the package, e.g. ``paper_sec4.cfg``."""
    path = DATA_DIR / name
    if not path.is_file():
        raise FileNotFoundError(path)
    return path
