"""
CLI errors and the mapping from exceptions to process exit codes.
"""

import logging
from typing import Any, Dict

from core.exceptions import CatFlowError

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_CONFIG_ERROR = 1
EXIT_VIOLATION = 2


class ConfigError(CatFlowError):
    """Experiment configuration could not be read or validated"""

    def __init__(self, detail: str, metadata: Dict[str, Any] = None):
        super().__init__(detail, "CONFIG_ERROR", metadata)


def handle_cli_exception(exc: Exception) -> int:
    """
    Log an exception that escaped a command and return the exit code.

    Library errors raised while the experiment is being set up (unknown
    catalog names, unsupported sets, bad schedules) count as configuration
    errors; anything else is logged with its traceback.
    """
    if isinstance(exc, CatFlowError):
        logger.error(
            f"{exc.error_code}: {exc.detail}",
            extra={"error_code": exc.error_code, "metadata": exc.metadata}
        )
        for key, value in exc.metadata.items():
            logger.error(f"  {key}: {value}")
        return EXIT_CONFIG_ERROR

    logger.error(f"Unhandled {type(exc).__name__}: {exc}", exc_info=True)
    return EXIT_CONFIG_ERROR
