"""
Unit tests for the vessel dynamics: parameter loading, MMG forces,
self-propulsion calibration, the steering gear and RK4 integration.
"""

import json
import math

import pytest
from hypothesis import HealthCheck, given, settings, strategies as st

from navsim.dynamics.integrator import rk4, rk4_step, rudder_update, simulate, wrap_angle
from navsim.dynamics.mmg import kinematic_rates, mmg_accelerations, self_propulsion_rate
from navsim.dynamics.params import load_params, params_from_dict, save_params
from navsim.dynamics.state import VesselState
from navsim.errors import (
    MissingCoefficient,
    NoEquilibrium,
    NonFiniteState,
    ParameterError,
    SingularMassMatrix,
)


class TestParams:
    """Parameter documents are validated before anything is simulated."""

    def test_shipped_set_loads(self, params):
        assert params.name == "kcs_like"
        assert params.L == 230.0
        assert params.rudder.delta_max == pytest.approx(math.radians(35.0))

    def test_missing_coefficient_is_named(self, params_doc):
        del params_doc["hull"]["Nr"]
        with pytest.raises(MissingCoefficient) as exc:
            params_from_dict(params_doc)
        assert exc.value.name == "Nr"
        assert "Nr" in str(exc.value)

    def test_unknown_key_rejected(self, params_doc):
        params_doc["hull"]["Yvvvv"] = 0.1
        with pytest.raises(ParameterError, match="Yvvvv"):
            params_from_dict(params_doc)

    def test_wrong_schema_version(self, params_doc):
        params_doc["schema_version"] = 2
        with pytest.raises(ParameterError):
            params_from_dict(params_doc)

    def test_rudder_limit_must_match_action_set(self, params_doc):
        params_doc["rudder"]["delta_max_deg"] = 30.0
        with pytest.raises(ParameterError):
            params_from_dict(params_doc)

    def test_negative_inertia_is_singular(self, params_doc):
        params_doc["mass"]["Izz"] = -0.01
        with pytest.raises(SingularMassMatrix):
            params_from_dict(params_doc)

    def test_missing_file(self, tmp_path):
        with pytest.raises(ParameterError, match="not found"):
            load_params(tmp_path / "nope.json")

    def test_invalid_json(self, tmp_path):
        path = tmp_path / "broken.json"
        path.write_text("{ not json")
        with pytest.raises(ParameterError, match="invalid JSON"):
            load_params(path)

    def test_save_and_reload(self, params, tmp_path):
        path = save_params(params, tmp_path / "copy.json")
        assert json.loads(path.read_text())["name"] == "kcs_like"
        assert load_params(path) == params


class TestKinematics:
    def test_heading_north(self):
        xdot, ydot, psidot = kinematic_rates(VesselState(psi=math.pi / 2, u=1.0, r=0.1))
        assert xdot == pytest.approx(0.0, abs=1e-15)
        assert ydot == pytest.approx(1.0)
        assert psidot == 0.1

    def test_sway_adds_to_the_left(self):
        xdot, ydot, _ = kinematic_rates(VesselState(psi=0.0, u=1.0, v=0.2))
        assert (xdot, ydot) == (1.0, 0.2)

    def test_quarter_heading_with_sway(self):
        xdot, ydot, psidot = kinematic_rates(VesselState(psi=math.pi / 4, u=1.0, v=1.0, r=0.2))
        assert xdot == pytest.approx(0.0, abs=1e-12)
        assert ydot == pytest.approx(math.sqrt(2.0))
        assert psidot == 0.2

    @settings(max_examples=200, deadline=None)
    @given(psi=st.floats(-math.pi, math.pi), u=st.floats(-2.0, 2.0), v=st.floats(-2.0, 2.0))
    def test_rotation_preserves_speed(self, psi, u, v):
        xdot, ydot, _ = kinematic_rates(VesselState(psi=psi, u=u, v=v))
        assert xdot ** 2 + ydot ** 2 == pytest.approx(u ** 2 + v ** 2, rel=1e-12, abs=1e-12)


class TestAccelerations:
    """Sign conventions and symmetry of the MMG right-hand side."""

    def test_straight_run_is_an_equilibrium(self, params, n_sp):
        udot, vdot, rdot = mmg_accelerations(VesselState(u=1.0, n=n_sp), params)
        assert abs(udot) < 1e-10
        assert vdot == 0.0
        assert rdot == 0.0

    def test_positive_rudder_turns_to_starboard(self, params, n_sp):
        delta = math.radians(20.0)
        _, vdot, rdot = mmg_accelerations(VesselState(u=1.0, delta=delta, n=n_sp), params)
        assert rdot < 0.0
        assert vdot > 0.0

    @settings(max_examples=200, deadline=None, suppress_health_check=[HealthCheck.function_scoped_fixture])
    @given(
        u=st.floats(0.2, 1.2),
        v=st.floats(-0.3, 0.3),
        r=st.floats(-0.6, 0.6),
        delta=st.floats(-0.61, 0.61),
    )
    def test_mirror_symmetry(self, params, n_sp, u, v, r, delta):
        a = mmg_accelerations(VesselState(u=u, v=v, r=r, delta=delta, n=n_sp), params)
        b = mmg_accelerations(VesselState(u=u, v=-v, r=-r, delta=-delta, n=n_sp), params)
        assert b[0] == pytest.approx(a[0], abs=1e-12)
        assert b[1] == pytest.approx(-a[1], abs=1e-12)
        assert b[2] == pytest.approx(-a[2], abs=1e-12)

    def test_stopped_ship_has_no_hull_forces(self, params):
        udot, vdot, rdot = mmg_accelerations(VesselState(u=0.0, n=0.0), params)
        assert (udot, vdot, rdot) == (0.0, 0.0, 0.0)


class TestSelfPropulsion:
    def test_calibrated_rate(self, params, n_sp):
        assert 0.0 < n_sp < 200.0
        udot, _, _ = mmg_accelerations(VesselState(u=1.0, n=n_sp), params)
        assert abs(udot) < 1e-10

    def test_advance_ratio_is_plausible(self, params, n_sp):
        j = (1.0 - params.propeller.w_p) / (n_sp * params.Dp_prime)
        assert 0.3 < j < 1.0

    def test_more_resistance_needs_more_revolutions(self, params_doc, n_sp):
        for key in ("R0", "Xvv"):
            params_doc["hull"][key] *= 2.0
        assert self_propulsion_rate(params_from_dict(params_doc)) > n_sp

    def test_search_interval_too_small(self, params):
        with pytest.raises(NoEquilibrium):
            self_propulsion_rate(params, n_max=1.0)


class TestRudderUpdate:
    """The steering gear is rate limited and clamped."""

    SLEW = math.radians(93.1)
    LIMIT = math.radians(35.0)

    def test_rate_limited_move(self):
        new = rudder_update(0.0, self.LIMIT, 0.1, slew_rate=self.SLEW, delta_max=self.LIMIT)
        assert new == pytest.approx(math.radians(9.31))

    def test_reaches_command_within_one_step(self):
        target = math.radians(5.0)
        new = rudder_update(0.0, target, 0.1, slew_rate=self.SLEW, delta_max=self.LIMIT)
        assert new == target

    def test_clamped_to_limit(self):
        new = rudder_update(self.LIMIT, math.radians(50.0), 0.1, slew_rate=self.SLEW, delta_max=self.LIMIT)
        assert new == self.LIMIT

    def test_moves_toward_negative_command(self):
        new = rudder_update(0.1, -self.LIMIT, 0.1, slew_rate=self.SLEW, delta_max=self.LIMIT)
        assert new == pytest.approx(0.1 - self.SLEW * 0.1)


class TestIntegrator:
    @pytest.mark.parametrize("angle, expected", [
        (0.0, 0.0),
        (math.pi, math.pi),
        (-math.pi, math.pi),
        (3 * math.pi, math.pi),
        (2 * math.pi + 0.1, 0.1),
        (-0.5, -0.5),
    ])
    def test_wrap_angle(self, angle, expected):
        assert wrap_angle(angle) == pytest.approx(expected, abs=1e-12)

    def test_rk4_order_on_exponential_decay(self):
        def error(h):
            y = 1.0
            for _ in range(int(round(10.0 / h))):
                y = rk4(lambda s: -s, y, h)
            return abs(y - math.exp(-10.0))
        assert math.log2(error(0.1) / error(0.05)) >= 3.9

    def test_rejects_non_positive_dt(self, params, n_sp):
        with pytest.raises(ValueError):
            rk4_step(VesselState(n=n_sp), params, 0.0)

    def test_non_finite_state_raises(self, params, n_sp):
        with pytest.raises(NonFiniteState):
            rk4_step(VesselState(u=float("nan"), n=n_sp), params, 0.1)

    def test_straight_run_holds_speed(self, params, n_sp):
        states = simulate(VesselState(u=1.0, n=n_sp), params, 0.1, [0.0] * 480)
        assert len(states) == 481
        assert max(abs(s.u - 1.0) for s in states) < 1e-5
        assert all(s.y == 0.0 and s.psi == 0.0 for s in states)
        assert states[-1].x == pytest.approx(48.0, rel=1e-4)

    def test_mirrored_commands_give_mirrored_tracks(self, params, n_sp):
        commands = [math.radians(20.0)] * 50 + [math.radians(-35.0)] * 50
        a = simulate(VesselState(u=1.0, n=n_sp), params, 0.1, commands)
        b = simulate(VesselState(u=1.0, n=n_sp), params, 0.1, [-c for c in commands])
        for sa, sb in zip(a, b):
            m = sb.mirrored()
            assert abs(sa.y - m.y) <= 1e-10
            assert abs(sa.r - m.r) <= 1e-10
            assert abs(wrap_angle(sa.psi - m.psi)) <= 1e-10

    def test_heading_stays_wrapped_in_a_turn(self, params, n_sp):
        states = simulate(VesselState(u=1.0, n=n_sp), params, 0.1, [math.radians(35.0)] * 600)
        assert all(-math.pi < s.psi <= math.pi for s in states)
        assert states[-1].r < 0.0
