"""
Centralized logging configuration for navsim.

Provides pre-configured loggers for each subsystem with both file and console output.
"""

import logging
import sys
from contextlib import contextmanager
from pathlib import Path
from typing import Dict, Iterator, List, Optional

SUBSYSTEMS = ("dynamics", "env", "agent", "cli", "validator")
RUN_LOG_FILE = "navsim.log"

FILE_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"
FILE_DATEFMT = "%Y-%m-%d %H:%M:%S"


def setup_logger(
    name: str,
    log_file: Optional[str] = None,
    level: Optional[int] = None,
    logs_dir: Optional[Path] = None
) -> logging.Logger:
    """
    Set up a logger with both file and console handlers.

    Args:
        name: Logger name (one per subsystem)
        log_file: Name of log file (default: {name}.log)
        level: Logging level (default: LOG_LEVEL from the runtime config)
        logs_dir: Directory for log files (default: logs/ or NAVSIM_LOG_DIR)

    Returns:
        Configured logger instance
    """
    logger = logging.getLogger(f"navsim.{name}")

    # Avoid adding handlers multiple times
    if logger.handlers:
        return logger

    try:
        from ..config import config
    except ImportError:
        config = None

    if level is None:
        level_name = config.runtime.log_level if config else "INFO"
        level = logging.getLevelName(level_name.upper())
        if not isinstance(level, int):
            level = logging.INFO
    logger.setLevel(level)
    logger.propagate = False

    file_formatter = logging.Formatter(FILE_FORMAT, datefmt=FILE_DATEFMT)
    console_formatter = logging.Formatter(
        '%(levelname)s: %(message)s'
    )

    if logs_dir is None:
        logs_dir = config.paths.logs_dir if config else Path(".")

    if log_file is None:
        log_file = f"{name}.log"

    try:
        logs_dir.mkdir(parents=True, exist_ok=True)
        file_handler = logging.FileHandler(logs_dir / log_file, encoding="utf-8", delay=True)
        file_handler.setLevel(logging.DEBUG)
        file_handler.setFormatter(file_formatter)
        logger.addHandler(file_handler)
    except OSError:
        # read-only checkouts still get console output
        pass

    # Console handler - INFO and above
    console_handler = logging.StreamHandler(sys.stdout)
    console_handler.setLevel(max(level, logging.INFO))
    console_handler.setFormatter(console_formatter)
    logger.addHandler(console_handler)

    return logger


# Pre-configured loggers for each subsystem
def get_dynamics_logger() -> logging.Logger:
    """Get logger for the vessel dynamics package."""
    return setup_logger('dynamics', 'dynamics.log')


def get_env_logger() -> logging.Logger:
    """Get logger for the guidance environment and collision risk."""
    return setup_logger('env', 'env.log')


def get_agent_logger() -> logging.Logger:
    """Get logger for training and evaluation."""
    return setup_logger('agent', 'agent.log')


def get_cli_logger() -> logging.Logger:
    """Get logger for command line entry points."""
    return setup_logger('cli', 'cli.log')


def get_validator_logger() -> logging.Logger:
    """Get logger for the maneuver validator."""
    return setup_logger('validator', 'validator.log')


@contextmanager
def run_log(out_dir: Path, log_file: str = RUN_LOG_FILE) -> Iterator[Path]:
    """
    Send the file output of every subsystem logger to one log in a run directory.

    The subsystem log files are detached while the block runs and restored after it.

    Args:
        out_dir: Run output directory
        log_file: Name of the run log

    Yields:
        Path of the run log
    """
    path = Path(out_dir) / log_file
    path.parent.mkdir(parents=True, exist_ok=True)
    handler = logging.FileHandler(path, encoding="utf-8")
    handler.setLevel(logging.DEBUG)
    handler.setFormatter(logging.Formatter(FILE_FORMAT, datefmt=FILE_DATEFMT))

    detached: Dict[str, List[logging.Handler]] = {}
    for name in SUBSYSTEMS:
        logger = setup_logger(name, f"{name}.log")
        detached[name] = [h for h in logger.handlers if isinstance(h, logging.FileHandler)]
        for h in detached[name]:
            logger.removeHandler(h)
        logger.addHandler(handler)
    try:
        yield path
    finally:
        for name, handlers in detached.items():
            logger = logging.getLogger(f"navsim.{name}")
            logger.removeHandler(handler)
            for h in handlers:
                logger.addHandler(h)
        handler.close()
