"""
Logging configuration for the denoiser.
Uses loguru; human diagnostics go to stderr so stdout stays machine-parsable.
"""

import sys
from pathlib import Path
from typing import TYPE_CHECKING

from loguru import logger

if TYPE_CHECKING:
    from denoiser.config import PipelineConfig


def setup_logging(config: "PipelineConfig", verbose: bool = False) -> None:
    """
    Configure logging for a CLI run.

    Args:
        config: Pipeline configuration (log level and optional log file)
        verbose: Force DEBUG on the console sink
    """

    logger.remove()

    log_format = (
        "<green>{time:YYYY-MM-DD HH:mm:ss}</green> | "
        "<level>{level: <8}</level> | "
        "<cyan>{name}</cyan>:<cyan>{function}</cyan>:<cyan>{line}</cyan> | "
        "<level>{message}</level>"
    )

    simple_format = "{time:YYYY-MM-DD HH:mm:ss} | {level: <8} | {name}:{function}:{line} | {message}"

    level = "DEBUG" if verbose else config.log_level

    logger.add(
        sys.stderr,
        format=log_format,
        level=level,
        colorize=True,
    )

    if config.log_file:
        log_path = Path(config.log_file)
        log_path.parent.mkdir(parents=True, exist_ok=True)

        logger.add(
            str(log_path),
            format=simple_format,
            level=level,
            rotation="10 MB",
            retention="30 days",
            compression="zip",
            enqueue=True,
        )

        logger.add(
            str(log_path.parent / "error.log"),
            format=simple_format,
            level="ERROR",
            rotation="10 MB",
            retention="60 days",
            compression="zip",
            enqueue=True,
        )

    logger.debug(f"Logging initialized - Level: {level}, File: {config.log_file or '-'}")


class StageLogger:
    """Context logger for one pipeline stage (train, evaluate, ...)."""

    def __init__(self, run_id: str, stage: str):
        self.run_id = run_id
        self.stage = stage
        self._logger = logger.bind(run_id=run_id, stage=stage)

    def _prefix(self, message: str) -> str:
        return f"[{self.stage}:{self.run_id[:8]}] {message}"

    def info(self, message: str, **kwargs):
        self._logger.info(self._prefix(message), **kwargs)

    def debug(self, message: str, **kwargs):
        self._logger.debug(self._prefix(message), **kwargs)

    def warning(self, message: str, **kwargs):
        self._logger.warning(self._prefix(message), **kwargs)

    def error(self, message: str, **kwargs):
        self._logger.error(self._prefix(message), **kwargs)
