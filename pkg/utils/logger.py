"""
Logging configuration for SignQuery.
"""

import logging
from config.settings import LOG_FILE, LOG_LEVEL


def setup_logger() -> logging.Logger:
    """Set up and configure the application logger."""
    handlers: list[logging.Handler] = [logging.StreamHandler()]
    if LOG_FILE:
        handlers.append(logging.FileHandler(LOG_FILE))
    logging.basicConfig(
        level=getattr(logging, LOG_LEVEL.upper(), logging.INFO),
        format='%(asctime)s - %(levelname)s - %(message)s',
        handlers=handlers
    )
    return logging.getLogger("signquery")


def set_level(level: int) -> None:
    """Change the application log level at runtime."""
    logger.setLevel(level)


logger = setup_logger()
