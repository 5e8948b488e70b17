"""
Logging setup for command-line runs.

Logs go to stderr (and LOG_FILE when set); stdout is reserved for stats records.
"""
import logging
import sys
from pathlib import Path

from reachidx.core.config import Settings

LOG_FORMAT = "%(asctime)s %(levelname)s %(name)s: %(message)s"


def configure_logging(settings: Settings) -> None:
    handlers: list[logging.Handler] = [logging.StreamHandler(sys.stderr)]
    if settings.LOG_FILE:
        Path(settings.LOG_FILE).parent.mkdir(parents=True, exist_ok=True)
        handlers.append(logging.FileHandler(settings.LOG_FILE))
    logging.basicConfig(level=settings.LOG_LEVEL, format=LOG_FORMAT, handlers=handlers, force=True)
