"""
Vessel dynamics: MMG maneuvering model, parameter sets and integration.
"""

from .integrator import rk4, rk4_step, rudder_update, simulate, wrap_angle
from .mmg import kinematic_rates, mmg_accelerations, self_propulsion_rate
from .params import HydroParams, load_params, params_from_dict, params_to_dict, save_params
from .state import VesselState

__all__ = [
    'HydroParams',
    'VesselState',
    'kinematic_rates',
    'load_params',
    'mmg_accelerations',
    'params_from_dict',
    'params_to_dict',
    'rk4',
    'rk4_step',
    'rudder_update',
    'save_params',
    'self_propulsion_rate',
    'simulate',
    'wrap_angle',
]
