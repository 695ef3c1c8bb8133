import sys
from typing import Optional

from loguru import logger

from toric4.core.config import settings


def configure_logging(level: Optional[str] = None) -> None:
    """Route loguru output to stderr at the requested level; stdout is kept for reports."""
    logger.remove()
    logger.add(
        sys.stderr,
        level=(level or settings.LOG_LEVEL).upper(),
        format="<green>{time:HH:mm:ss}</green> | <level>{level: <8}</level> | {name}:{function} - {message}",
    )
