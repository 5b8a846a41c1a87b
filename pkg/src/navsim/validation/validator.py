"""
Maneuver acceptance gate for hydrodynamic parameter sets.

A parameter file is accepted only when the simulated vessel behaves like a
ship: it holds a straight run at the calibrated propeller rate, is exactly
port/starboard symmetric, integrates at fourth order, settles into a closed
turning circle and answers a 20/20 zigzag.
"""

import math
from pathlib import Path
from typing import Dict, List, Optional, Union

import numpy as np

from ..errors import NavsimError
from ..dynamics.integrator import rk4, rk4_step, simulate
from ..dynamics.mmg import self_propulsion_rate
from ..dynamics.params import HydroParams, load_params
from ..dynamics.state import VesselState
from ..utils.logger import get_validator_logger

logger = get_validator_logger()

DT = 0.1
STRAIGHT_RUN_STEPS = 480          # 160 agent steps of 3 substeps
SPEED_DRIFT_TOL = 1e-5
MIRROR_TOL = 1e-10
MIN_ORDER = 3.9
CONVERGENCE_DT = (0.05, 0.025)
CONVERGENCE_HORIZON = 10.0
TURN_ANGLE_DEG = 35.0
TURN_HORIZON = 120.0
STEADY_FRACTION = 0.2
STEADY_SPREAD_TOL = 0.05
MAX_TACTICAL_DIAMETER = 10.0
ZIGZAG_DEG = 20.0
ZIGZAG_HORIZON = 80.0
MIN_ZIGZAG_OVERSHOOTS = 2
MAX_FIRST_OVERSHOOT_DEG = 25.0


def rk4_order(dt: float = 0.1, horizon: float = 10.0) -> float:
    """Observed order of rk4 on y' = -y, from dt and dt/2 against the exact solution."""
    def error(h: float) -> float:
        y = 1.0
        for _ in range(int(round(horizon / h))):
            y = rk4(lambda s: -s, y, h)
        return abs(y - math.exp(-horizon))
    return math.log2(error(dt) / error(dt / 2))


def turning_state(params: HydroParams, n_sp: float, delta_deg: float) -> VesselState:
    """Straight run with the rudder already at delta_deg, for convergence studies."""
    d = math.radians(delta_deg)
    return VesselState(u=1.0, delta=d, delta_c=d, n=n_sp)


def run_fixed_rudder(params: HydroParams, start: VesselState, dt: float, horizon: float) -> np.ndarray:
    """(steps + 1, 6) array of motion states under the held rudder command of start."""
    steps = int(round(horizon / dt))
    states = simulate(start, params, dt, [start.delta_c] * steps)
    return np.array([s.motion() for s in states])


class ManeuverValidator:
    """Runs the acceptance maneuvers and collects errors, warnings and measurements."""

    def __init__(self, params: HydroParams):
        """
        Initialize validator with a parameter set.

        Args:
            params: Parameter set under test
        """
        self.params = params
        self.errors: List[str] = []
        self.warnings: List[str] = []
        self.measurements: Dict[str, float] = {}
        self.n_sp: Optional[float] = None

    def validate(self) -> bool:
        """
        Run all checks.

        Returns:
            True if validation passed (may have warnings), False if errors found
        """
        self._check_hull_signs()
        self._check_self_propulsion()
        if self.n_sp is not None:
            for check in (self._check_straight_run, self._check_mirror_symmetry,
                          self._check_convergence, self._check_turning_circle, self._check_zigzag):
                try:
                    check()
                except NavsimError as e:
                    self.errors.append(f"{check.__name__.lstrip('_')}: {type(e).__name__}: {e}")

        for warning in self.warnings:
            logger.warning(warning)
        for error in self.errors:
            logger.error(error)

        if self.errors:
            logger.error(f"Validation FAILED with {len(self.errors)} errors and {len(self.warnings)} warnings")
            return False

        logger.info(f"Validation PASSED with {len(self.warnings)} warnings")
        return True

    def _check_hull_signs(self):
        """Linear sway and yaw damping must oppose the motion."""
        h = self.params.hull
        if not h.Yv < 0:
            self.errors.append(f"hull derivative Yv = {h.Yv} must be negative (sway damping)")
        if not h.Nr < 0:
            self.errors.append(f"hull derivative Nr = {h.Nr} must be negative (yaw damping)")

    def _check_self_propulsion(self):
        try:
            self.n_sp = self_propulsion_rate(self.params)
        except NavsimError as e:
            self.errors.append(f"self-propulsion: {e}")
            return
        self.measurements["n_sp"] = self.n_sp
        self.measurements["n_sp_rps"] = self.n_sp / self.params.time_scale

    def _check_straight_run(self):
        start = VesselState(u=1.0, n=self.n_sp)
        states = simulate(start, self.params, DT, [0.0] * STRAIGHT_RUN_STEPS)
        drift = max(abs(s.u - 1.0) for s in states)
        lateral = max(abs(s.y) for s in states)
        self.measurements["straight_run_speed_drift"] = drift
        if drift >= SPEED_DRIFT_TOL:
            self.errors.append(f"straight run drifts in speed by {drift:.2e} (limit {SPEED_DRIFT_TOL:.0e})")
        if lateral > 0.0:
            self.errors.append(f"straight run leaves the track line by {lateral:.2e}")

    def _check_mirror_symmetry(self):
        d = math.radians
        commands = [d(20.0)] * 60 + [d(-10.0)] * 60 + [d(35.0)] * 80
        start = VesselState(u=1.0, n=self.n_sp)
        a = simulate(start, self.params, DT, commands)
        b = simulate(start, self.params, DT, [-c for c in commands])
        worst = 0.0
        for sa, sb in zip(a, b):
            m = sb.mirrored()
            worst = max(worst, abs(sa.x - m.x), abs(sa.y - m.y), abs(sa.u - m.u),
                        abs(sa.v - m.v), abs(sa.r - m.r),
                        abs(math.remainder(sa.psi - m.psi, 2.0 * math.pi)))
        self.measurements["mirror_max_deviation"] = worst
        if worst > MIRROR_TOL:
            self.errors.append(f"mirrored rudder sequences differ by {worst:.2e} (limit {MIRROR_TOL:.0e})")

    def _check_convergence(self):
        scalar = rk4_order()
        self.measurements["rk4_order_scalar"] = scalar

        coarse, fine = CONVERGENCE_DT
        start = turning_state(self.params, self.n_sp, TURN_ANGLE_DEG)
        reference = run_fixed_rudder(self.params, start, fine / 16, CONVERGENCE_HORIZON)[-1]
        e_coarse = np.max(np.abs(run_fixed_rudder(self.params, start, coarse, CONVERGENCE_HORIZON)[-1] - reference))
        e_fine = np.max(np.abs(run_fixed_rudder(self.params, start, fine, CONVERGENCE_HORIZON)[-1] - reference))
        model = float(np.log2(e_coarse / e_fine))
        self.measurements["rk4_order_model"] = model

        for label, order in (("scalar test equation", scalar), ("vessel model", model)):
            if not order >= MIN_ORDER:
                self.errors.append(f"RK4 order on the {label} is {order:.2f} (minimum {MIN_ORDER})")

    def _check_turning_circle(self):
        start = VesselState(u=1.0, delta_c=math.radians(TURN_ANGLE_DEG), n=self.n_sp)
        traj = run_fixed_rudder(self.params, start, DT, TURN_HORIZON)
        x, y, psi, u, r = traj[:, 0], traj[:, 1], np.unwrap(traj[:, 2]), traj[:, 3], traj[:, 5]

        tail = r[int(len(r) * (1.0 - STEADY_FRACTION)):]
        mean_r = float(np.mean(tail))
        spread = float((tail.max() - tail.min()) / abs(mean_r)) if mean_r != 0.0 else math.inf
        self.measurements["turning_steady_r"] = mean_r
        self.measurements["turning_r_spread"] = spread
        self.measurements["turning_min_u"] = float(u.min())

        if not mean_r < 0.0:
            self.errors.append(f"positive rudder gives steady yaw rate {mean_r:.4f}; expected a starboard turn")
        if not spread <= STEADY_SPREAD_TOL:
            self.errors.append(f"yaw rate not steady in the turn: spread {spread:.1%} over the last "
                               f"{STEADY_FRACTION:.0%} (limit {STEADY_SPREAD_TOL:.0%})")

        turned = np.abs(psi - psi[0])
        if turned[-1] < 2.0 * math.pi:
            self.errors.append(f"turn did not close a circle: heading changed by {math.degrees(turned[-1]):.0f} deg")
            return
        i90 = int(np.argmax(turned >= math.pi / 2))
        i180 = int(np.argmax(turned >= math.pi))
        advance = float(x[i90])
        tactical = float(abs(y[i180]))
        self.measurements["turning_advance"] = advance
        self.measurements["turning_tactical_diameter"] = tactical
        if not tactical < MAX_TACTICAL_DIAMETER:
            self.errors.append(f"tactical diameter {tactical:.2f} L exceeds {MAX_TACTICAL_DIAMETER} L")
        if u.min() < 0.0:
            self.warnings.append(f"surge speed went negative in the turn (min {u.min():.3f})")

    def _check_zigzag(self):
        """20/20 zigzag: reverse the rudder whenever the heading passes +/-20 deg."""
        limit = math.radians(ZIGZAG_DEG)
        state = VesselState(u=1.0, delta_c=limit, n=self.n_sp)
        # positive rudder turns to starboard, i.e. toward negative psi
        sign = -1.0
        overshoots: List[float] = []
        peak = 0.0
        tracking = False
        for _ in range(int(round(ZIGZAG_HORIZON / DT))):
            state = rk4_step(state, self.params, DT)
            excursion = sign * state.psi
            if not tracking:
                if excursion >= limit:
                    state = state.with_command(-state.delta_c)
                    tracking, peak = True, excursion
            elif excursion > peak:
                peak = excursion
            else:
                overshoots.append(math.degrees(peak - limit))
                sign, tracking = -sign, False
            if len(overshoots) >= 2 * MIN_ZIGZAG_OVERSHOOTS:
                break

        for i, value in enumerate(overshoots[:2], start=1):
            self.measurements[f"zigzag_overshoot_{i}_deg"] = value
        if len(overshoots) < MIN_ZIGZAG_OVERSHOOTS:
            self.errors.append(f"zigzag produced {len(overshoots)} overshoots in {ZIGZAG_HORIZON} time units")
        elif overshoots[0] > MAX_FIRST_OVERSHOOT_DEG:
            # a course-unstable hull overshoots far past the check angle
            self.errors.append(f"first zigzag overshoot {overshoots[0]:.1f} deg exceeds "
                               f"{MAX_FIRST_OVERSHOOT_DEG} deg")

    def get_summary(self) -> dict:
        """
        Get validation summary.

        Returns:
            Dictionary with validation results and measured numbers
        """
        return {
            "parameter_set": self.params.name,
            "error_count": len(self.errors),
            "warning_count": len(self.warnings),
            "errors": self.errors,
            "warnings": self.warnings,
            "measurements": self.measurements,
            "passed": len(self.errors) == 0,
        }


def validate_file(filepath: Union[str, Path]) -> ManeuverValidator:
    """
    Load a parameters file and run the maneuver checks.

    Raises:
        ParameterError: if the file cannot be loaded
    """
    validator = ManeuverValidator(load_params(filepath))
    validator.validate()
    return validator
