import sys

from loguru import logger as _loguru_logger

from app.core.config import settings

LOG_FORMAT = "{time:YYYY-MM-DD HH:mm:ss} - {name} - {level} - {message}"


def setup_logging(sink=sys.stdout, level: str | None = None):
    # logging config

    # Drop loguru's default stderr handler so the level below is the only one
    _loguru_logger.remove()

    _loguru_logger.add(
        sink,
        level=(level or settings.log_level).upper(),
        format=LOG_FORMAT,
        serialize=settings.log_format == "json",
        backtrace=settings.debug,
        diagnose=settings.debug,
    )

    return _loguru_logger.bind(app="mcg_certifier")


# Global logger instance
logger = setup_logging()
