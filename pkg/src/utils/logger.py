import logging
import sys
from typing import Optional

from config.system_config import settings


def setup_logger(
    name: str = "sawmod", log_file: Optional[str] = None, console: bool = True
) -> logging.Logger:
    """Configure a named logger; repeated calls reuse the existing handlers."""
    logger = logging.getLogger(name)
    if logger.handlers:
        return logger
    logger.setLevel(logging.DEBUG)
    logger.propagate = False
    formatter = logging.Formatter(settings.LOG_FORMAT)

    # Log to file
    log_file = log_file or settings.LOG_FILE
    if log_file:
        file_handler = logging.FileHandler(log_file)
        file_handler.setLevel(logging.ERROR)
        file_handler.setFormatter(formatter)
        logger.addHandler(file_handler)

    # Log to console; stdout is reserved for JSON/CSV results
    if console:
        console_handler = logging.StreamHandler(sys.stderr)
        console_handler.setLevel(settings.LOG_LEVEL)
        console_handler.setFormatter(formatter)
        logger.addHandler(console_handler)
    elif not logger.handlers:
        logger.addHandler(logging.NullHandler())

    return logger
