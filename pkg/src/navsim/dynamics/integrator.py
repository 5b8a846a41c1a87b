"""
Fixed-step integration of the vessel dynamics.

The classical fourth-order Runge-Kutta scheme advances (x, y, psi, u, v, r);
the rudder follows its command through a rate-limited steering gear that is
updated once per step and held during the stage evaluations.
"""

import math
from typing import Callable, Iterable, List, TypeVar

import numpy as np

from ..errors import NonFiniteState
from ..utils.logger import get_dynamics_logger
from .mmg import body_accelerations
from .params import HydroParams
from .state import VesselState

logger = get_dynamics_logger()

Y = TypeVar("Y")

TWO_PI = 2.0 * math.pi


def wrap_angle(angle: float) -> float:
    """Wrap an angle to (-pi, pi]."""
    wrapped = math.remainder(angle, TWO_PI)
    if wrapped <= -math.pi:
        wrapped += TWO_PI
    return wrapped


def rk4(f: Callable[[Y], Y], y: Y, dt: float) -> Y:
    """One classical Runge-Kutta step of an autonomous ODE y' = f(y).

    Works for floats and numpy arrays alike.
    """
    k1 = f(y)
    k2 = f(y + 0.5 * dt * k1)
    k3 = f(y + 0.5 * dt * k2)
    k4 = f(y + dt * k3)
    return y + dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4)


def rudder_update(delta: float, delta_c: float, dt: float, *,
                  slew_rate: float, delta_max: float) -> float:
    """
    Move the rudder toward its command at most slew_rate * dt.

    Args:
        delta: Current rudder angle (rad)
        delta_c: Commanded rudder angle (rad)
        dt: Step length (non-dim time)
        slew_rate: Steering gear rate (rad per non-dim time)
        delta_max: Mechanical limit (rad)

    Returns:
        New rudder angle, clamped to +/- delta_max
    """
    max_move = slew_rate * dt
    diff = delta_c - delta
    if abs(diff) <= max_move:
        new = delta_c
    else:
        new = delta + math.copysign(max_move, diff)
    return min(max(new, -delta_max), delta_max)


def motion_derivative(delta: float, n: float, params: HydroParams) -> Callable[[np.ndarray], np.ndarray]:
    """Right-hand side of the six-state ODE with rudder and propeller held fixed."""

    def f(s: np.ndarray) -> np.ndarray:
        _, _, psi, u, v, r = s
        c, sn = math.cos(psi), math.sin(psi)
        udot, vdot, rdot = body_accelerations(u, v, r, delta, n, params)
        return np.array([u * c - v * sn, u * sn + v * c, r, udot, vdot, rdot])

    return f


def rk4_step(state: VesselState, params: HydroParams, dt: float) -> VesselState:
    """
    Advance the vessel by one integration step.

    Raises:
        ValueError: if dt is not positive
        NonFiniteState: if the step produced NaN or infinite components
    """
    if not dt > 0:
        raise ValueError(f"dt must be positive, got {dt}")
    rd = params.rudder
    delta = rudder_update(state.delta, state.delta_c, dt,
                          slew_rate=rd.slew_rate, delta_max=rd.delta_max)
    y = np.array(state.motion(), dtype=float)
    x, yy, psi, u, v, r = rk4(motion_derivative(delta, state.n, params), y, dt)
    if not all(math.isfinite(c) for c in (x, yy, psi, u, v, r)):
        raise NonFiniteState(
            f"non-finite state after step from {state} (dt={dt}); check coefficients and dt"
        )
    new_state = VesselState(float(x), float(yy), wrap_angle(float(psi)), float(u), float(v), float(r),
                            delta, state.delta_c, state.n)
    if new_state.u < 0.0 <= state.u:
        logger.warning(f"Surge speed turned negative (u = {new_state.u:.4f})")
    return new_state


def simulate(state: VesselState, params: HydroParams, dt: float,
             commands: Iterable[float]) -> List[VesselState]:
    """Integrate one step per rudder command; returns the states including the initial one."""
    states = [state]
    for delta_c in commands:
        state = rk4_step(state.with_command(delta_c), params, dt)
        states.append(state)
    return states
