"""
MMG 3-DOF maneuvering model (surge, sway, yaw) in prime-II form.

Forces are scaled by 0.5 rho L^2 U^2, moments by 0.5 rho L^3 U^2 and time by
L/U, with U the fixed design speed. The global frame is counter-clockwise
(y to port); the rudder interaction terms are evaluated in the conventional
starboard-positive MMG frame and mapped back.
"""

import math
from typing import Tuple

from scipy.optimize import bisect

from ..config import config
from ..errors import NoEquilibrium
from ..utils.logger import get_dynamics_logger
from .params import HydroParams
from .state import VesselState

logger = get_dynamics_logger()

# Below this speed the hull polynomials are switched off
SPEED_EPS = 1e-9

# Tolerance for the self-propulsion balance
EQUILIBRIUM_TOL = 1e-10

# Grid used to bracket the self-propulsion rate
BRACKET_POINTS = 400


def kinematic_rates(state: VesselState) -> Tuple[float, float, float]:
    """Rotate body velocities into the global frame: (xdot, ydot, psidot)."""
    c, s = math.cos(state.psi), math.sin(state.psi)
    return (state.u * c - state.v * s, state.u * s + state.v * c, state.r)


def hull_forces(u: float, v: float, r: float, params: HydroParams) -> Tuple[float, float, float]:
    """Hull forces scaled to the design speed; coefficients are given per instantaneous speed."""
    h = params.hull
    ut2 = u * u + v * v
    if ut2 < SPEED_EPS * SPEED_EPS:
        return (0.0, 0.0, 0.0)
    ut = math.sqrt(ut2)
    x = -h.R0 * ut2 + h.Xvv * v * v + h.Xvr * v * r + h.Xrr * r * r + h.Xvvvv * v ** 4 / ut2
    cubic_y = h.Yvvv * v ** 3 + h.Yvvr * v * v * r + h.Yvrr * v * r * r + h.Yrrr * r ** 3
    cubic_n = h.Nvvv * v ** 3 + h.Nvvr * v * v * r + h.Nvrr * v * r * r + h.Nrrr * r ** 3
    y = h.Yv * v * ut + h.Yr * r * ut + cubic_y / ut
    n = h.Nv * v * ut + h.Nr * r * ut + cubic_n / ut
    return (x, y, n)


def thrust_coefficient(u: float, n: float, params: HydroParams) -> Tuple[float, float]:
    """Open-water K_T and the propeller inflow speed u_p."""
    p = params.propeller
    u_p = u * (1.0 - p.w_p)
    nd = n * params.Dp_prime
    if abs(nd) < SPEED_EPS:
        return (0.0, u_p)
    j = u_p / nd
    return (p.k0 + p.k1 * j + p.k2 * j * j, u_p)


def propeller_force(u: float, n: float, params: HydroParams) -> float:
    """Surge force of the propeller after thrust deduction."""
    kt, _ = thrust_coefficient(u, n, params)
    d = params.Dp_prime
    thrust = 2.0 * (n * d) ** 2 * d * d * kt
    return (1.0 - params.propeller.t_p) * thrust


def rudder_forces(u: float, v: float, r: float, delta: float, n: float,
                  params: HydroParams) -> Tuple[float, float, float]:
    """Rudder forces including the hull interaction terms, in the global-frame convention."""
    rd = params.rudder
    # conventional MMG frame: y to starboard
    v_m, r_m = -v, -r
    kt, u_p = thrust_coefficient(u, n, params)
    nd = n * params.Dp_prime
    if abs(nd) < SPEED_EPS:
        u_r = rd.epsilon * abs(u_p)
    else:
        slip = math.sqrt(max(u_p * u_p + 8.0 * kt * nd * nd / math.pi, 0.0)) - u_p
        accelerated = u_p + rd.kappa * slip
        u_r = rd.epsilon * math.sqrt(rd.eta * accelerated ** 2 + (1.0 - rd.eta) * u_p * u_p)

    ut = math.hypot(u, v)
    beta = math.atan2(-v_m, u)
    beta_r = beta - rd.l_R * r_m
    v_r = ut * rd.gamma_R * beta_r
    alpha_r = delta - math.atan2(v_r, u_r)
    f_n = rd.area_ratio * (u_r * u_r + v_r * v_r) * rd.lift_slope * math.sin(alpha_r)

    cos_d, sin_d = math.cos(delta), math.sin(delta)
    x_r = -(1.0 - rd.t_R) * f_n * sin_d
    y_r_m = -(1.0 + rd.a_H) * f_n * cos_d
    n_r_m = -(rd.x_R + rd.a_H * rd.x_H) * f_n * cos_d
    return (x_r, -y_r_m, -n_r_m)


def mmg_accelerations(state: VesselState, params: HydroParams) -> Tuple[float, float, float]:
    """
    Body-frame accelerations (udot, vdot, rdot) from the MMG momentum balance.

    Args:
        state: Current vessel state (uses u, v, r, delta, n)
        params: Validated coefficient set

    Returns:
        Non-dimensional accelerations
    """
    return body_accelerations(state.u, state.v, state.r, state.delta, state.n, params)


def body_accelerations(u: float, v: float, r: float, delta: float, n: float,
                       params: HydroParams) -> Tuple[float, float, float]:
    xh, yh, nh = hull_forces(u, v, r, params)
    xp = propeller_force(u, n, params)
    xr, yr, nr = rudder_forces(u, v, r, delta, n, params)

    m, mxg = params.m, params.m * params.xG
    b0 = xh + xp + xr + (m + params.my) * v * r + mxg * r * r
    b1 = yh + yr - (m + params.mx) * u * r
    b2 = nh + nr - mxg * u * r

    (a00, _, _), (_, a11, a12), (_, a21, a22) = params.mass_matrix_inverse
    return (a00 * b0, a11 * b1 + a12 * b2, a21 * b1 + a22 * b2)


def self_propulsion_rate(params: HydroParams, n_max: float = None) -> float:
    """
    Propeller rate that holds the straight run at u = 1.

    Scans (0, n_max] for the first sign change of udot and refines it by bisection.

    Args:
        params: Validated coefficient set
        n_max: Upper end of the search (default: SimConfig.n_max)

    Returns:
        Non-dimensional propeller rate n_sp

    Raises:
        NoEquilibrium: if udot does not change sign on the search interval
    """
    if n_max is None:
        n_max = config.sim.n_max

    def udot(n: float) -> float:
        return body_accelerations(1.0, 0.0, 0.0, 0.0, n, params)[0]

    grid = [n_max * k / BRACKET_POINTS for k in range(1, BRACKET_POINTS + 1)]
    lo, f_lo = grid[0], udot(grid[0])
    for hi in grid[1:]:
        f_hi = udot(hi)
        if f_lo == 0.0:
            return lo
        if f_lo * f_hi < 0.0 or f_hi == 0.0:
            break
        lo, f_lo = hi, f_hi
    else:
        raise NoEquilibrium(
            f"udot keeps one sign on (0, {n_max}] for parameter set '{params.name}'"
        )

    n_sp = bisect(udot, lo, hi, xtol=1e-15, rtol=1e-15, maxiter=400)
    residual = udot(n_sp)
    if abs(residual) >= EQUILIBRIUM_TOL:
        raise NoEquilibrium(f"self-propulsion residual {residual:.3e} above tolerance at n = {n_sp}")
    logger.info(f"Self-propulsion rate for '{params.name}': n = {n_sp:.6f} (residual {residual:.1e})")
    return n_sp
