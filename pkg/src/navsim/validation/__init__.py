"""
Acceptance checks for hydrodynamic parameter sets.
"""

from .validator import ManeuverValidator, rk4_order, validate_file

__all__ = ['ManeuverValidator', 'rk4_order', 'validate_file']
