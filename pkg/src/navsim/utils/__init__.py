"""Utility modules for navsim."""

from .logger import (
    setup_logger,
    get_dynamics_logger,
    get_env_logger,
    get_agent_logger,
    get_cli_logger,
    get_validator_logger,
    run_log,
)
from .prepender import PrependToFile, prepend_units_header

__all__ = [
    'setup_logger',
    'get_dynamics_logger',
    'get_env_logger',
    'get_agent_logger',
    'get_cli_logger',
    'get_validator_logger',
    'run_log',
    'PrependToFile',
    'prepend_units_header',
]
