"""Logging configuration for synmon runs."""
import logging
from logging.handlers import RotatingFileHandler
from pathlib import Path

from .config import APP_LOGGING_PATH, LOG_LEVEL

LOG_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"
FILE_FORMAT = "%(asctime)s - %(levelname)s - %(message)s"
MAX_LOG_BYTES = 10 * 1024 * 1024
LOG_BACKUPS = 5

# Named loggers with their own rotating file under APP_LOGGING_PATH
FILE_LOGGERS = {
    "verify": "verify.log",  # verification outcomes
    "cli": "cli.log",  # command invocations and exit codes
}


def _attach(logger: logging.Logger, handler: logging.Handler, fmt: str) -> None:
    if logger.handlers:
        return
    handler.setFormatter(logging.Formatter(fmt))
    logger.addHandler(handler)


def setup_logging(level: str = LOG_LEVEL) -> logging.Logger:
    """Console logging on stderr plus the rotating file loggers.

    Safe to call more than once; existing handlers are kept.
    """
    log_dir = Path(APP_LOGGING_PATH)
    log_dir.mkdir(parents=True, exist_ok=True)

    root_logger = logging.getLogger()
    root_logger.setLevel(level)
    # stderr keeps stdout clean for command output
    _attach(root_logger, logging.StreamHandler(), LOG_FORMAT)

    for name, filename in FILE_LOGGERS.items():
        named = logging.getLogger(name)
        named.setLevel(logging.INFO)
        if not named.handlers:
            _attach(named, RotatingFileHandler(log_dir / filename, maxBytes=MAX_LOG_BYTES, backupCount=LOG_BACKUPS),
                    FILE_FORMAT)

    return root_logger
