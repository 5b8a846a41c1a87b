"""
Tests for closest-point-of-approach geometry and collision risk.
"""

import math

import numpy as np
import pytest
from hypothesis import HealthCheck, assume, given, settings, strategies as st

from navsim.errors import EmptyList, StationaryRelative
from navsim.risk.cpa import (
    CRAssessment,
    assess,
    assess_obstacles,
    collision_risk,
    critical_obstacle,
    dcpa_tcpa,
    relative_kinematics,
)

coord = st.floats(-20.0, 20.0)
speed = st.floats(-1.7, 1.7)


def _assessment(obstacle_id, R, CR):
    return CRAssessment(obstacle_id, R, 1.0, 0.0, 0.0, 0.0, 0.0, 1.0, CR)


class TestRelativeKinematics:
    def test_head_on_static_obstacle(self):
        rel = relative_kinematics((0.0, 0.0), (1.0, 0.0), (10.0, 0.0), (0.0, 0.0))
        assert rel.R == 10.0
        assert rel.V_R == 1.0
        assert rel.chi_R == pytest.approx(math.pi)
        assert rel.theta == 0.0
        dcpa, tcpa = dcpa_tcpa(rel)
        assert dcpa == pytest.approx(0.0, abs=1e-12)
        assert tcpa == pytest.approx(10.0)
        assert collision_risk(dcpa, tcpa) == pytest.approx(math.exp(-10.0))

    def test_passing_abeam(self):
        rel = relative_kinematics((0.0, 0.0), (1.0, 0.0), (5.0, 2.0), (0.0, 0.0))
        dcpa, tcpa = dcpa_tcpa(rel)
        assert abs(dcpa) == pytest.approx(2.0)
        assert tcpa == pytest.approx(5.0)

    def test_obstacle_course_reported(self):
        rel = relative_kinematics((0.0, 0.0), (1.0, 0.0), (5.0, 5.0), (0.0, -0.5))
        assert rel.chi_os == pytest.approx(-math.pi / 2)

    def test_stationary_relative_motion_raises(self):
        rel = relative_kinematics((0.0, 0.0), (1.0, 0.0), (5.0, 1.0), (1.0, 0.0))
        with pytest.raises(StationaryRelative):
            dcpa_tcpa(rel)


class TestCollisionRisk:
    @pytest.mark.parametrize("dcpa, tcpa, expected", [
        (0.0, 0.0, 0.0),
        (0.0, -3.0, 0.0),
        (1.0, 1.0, math.exp(-2.0)),
        (-1.0, 1.0, math.exp(-2.0)),
        (0.0, 1e-9, math.exp(-1e-9)),
    ])
    def test_values(self, dcpa, tcpa, expected):
        assert collision_risk(dcpa, tcpa) == pytest.approx(expected)

    def test_stationary_obstacle_carries_no_risk(self):
        a = assess(3, (0.0, 0.0), (0.5, 0.0), (4.0, 0.0), (0.5, 0.0))
        assert a.TCPA == math.inf
        assert a.DCPA == pytest.approx(4.0)
        assert a.CR == 0.0

    def test_obstacle_astern_moving_away(self):
        a = assess(0, (0.0, 0.0), (1.0, 0.0), (-5.0, 0.0), (0.5, 0.0))
        assert a.TCPA < 0.0
        assert a.CR == 0.0

    def test_risk_grows_as_range_closes(self):
        risks = [assess(0, (x, 0.0), (1.0, 0.0), (12.0, 0.0), (0.0, 0.0)).CR for x in range(0, 11)]
        assert all(b > a for a, b in zip(risks, risks[1:]))

    @settings(max_examples=300, deadline=None)
    @given(dcpa=st.floats(-10.0, 10.0), tcpa=st.floats(1e-6, 30.0), step=st.floats(1e-3, 5.0))
    def test_strictly_decreasing_in_dcpa_and_tcpa(self, dcpa, tcpa, step):
        cr = collision_risk(dcpa, tcpa)
        assert collision_risk(math.copysign(abs(dcpa) + step, dcpa), tcpa) < cr
        assert collision_risk(dcpa, tcpa + step) < cr


class TestCriticalObstacle:
    def test_highest_risk_wins(self):
        assessments = [_assessment(0, 2.0, 0.1), _assessment(1, 8.0, 0.4), _assessment(2, 1.0, 0.0)]
        assert critical_obstacle(assessments) == 1

    def test_ties_go_to_smallest_id(self):
        assessments = [_assessment(5, 2.0, 0.3), _assessment(2, 3.0, 0.3)]
        assert critical_obstacle(assessments) == 2

    def test_nearest_when_no_risk(self):
        assessments = [_assessment(0, 6.0, 0.0), _assessment(1, 3.0, 0.0), _assessment(2, 3.0, 0.0)]
        assert critical_obstacle(assessments) == 1

    def test_empty_list(self):
        with pytest.raises(EmptyList):
            critical_obstacle([])

    @settings(max_examples=200, deadline=None)
    @given(data=st.data(), rows=st.lists(
        st.tuples(st.floats(0.1, 20.0), st.sampled_from([0.0, 0.0, 0.05, 0.3, 0.3, 0.9])),
        min_size=1, max_size=8,
    ))
    def test_permutation_invariant(self, data, rows):
        assessments = [_assessment(i, R, CR) for i, (R, CR) in enumerate(rows)]
        shuffled = data.draw(st.permutations(assessments))
        assert critical_obstacle(shuffled) == critical_obstacle(assessments)

    def test_assess_obstacles_keeps_order(self):
        result = assess_obstacles((0.0, 0.0), (1.0, 0.0), [
            (7, (5.0, 0.0), (0.0, 0.0)),
            (3, (9.0, 1.0), (0.0, 0.0)),
        ])
        assert [a.obstacle_id for a in result] == [7, 3]


class TestExchange:
    """Swapping the roles of ship and obstacle leaves the encounter geometry unchanged."""

    @settings(max_examples=300, deadline=None)
    @given(sx=coord, sy=coord, svx=speed, svy=speed, ox=coord, oy=coord, ovx=speed, ovy=speed)
    def test_swap_preserves_dcpa_and_tcpa(self, sx, sy, svx, svy, ox, oy, ovx, ovy):
        assume(math.hypot(ovx - svx, ovy - svy) > 0.05)
        assume(math.hypot(ox - sx, oy - sy) > 0.1)
        forward = assess(0, (sx, sy), (svx, svy), (ox, oy), (ovx, ovy))
        swapped = assess(0, (ox, oy), (ovx, ovy), (sx, sy), (svx, svy))
        assert abs(swapped.DCPA) == pytest.approx(abs(forward.DCPA), abs=1e-7)
        assert swapped.TCPA == pytest.approx(forward.TCPA, abs=1e-7)
        assert swapped.R == pytest.approx(forward.R)


class TestInvariance:
    """DCPA magnitude, TCPA and CR do not depend on where or how the encounter is drawn."""

    @settings(max_examples=300, deadline=None, suppress_health_check=[HealthCheck.function_scoped_fixture])
    @given(sx=coord, sy=coord, svx=speed, svy=speed, ox=coord, oy=coord, ovx=speed, ovy=speed,
           dx=coord, dy=coord, phi=st.floats(-math.pi, math.pi))
    def test_translation_and_rotation(self, sx, sy, svx, svy, ox, oy, ovx, ovy, dx, dy, phi):
        assume(math.hypot(ovx - svx, ovy - svy) > 0.05)
        assume(math.hypot(ox - sx, oy - sy) > 0.1)
        c, s = math.cos(phi), math.sin(phi)

        def rot(p):
            return (c * p[0] - s * p[1], s * p[0] + c * p[1])

        base = assess(0, (sx, sy), (svx, svy), (ox, oy), (ovx, ovy))
        # CR jumps at TCPA = 0
        assume(abs(base.TCPA) > 1e-6)
        moved = assess(0, rot((sx + dx, sy + dy)), rot((svx, svy)), rot((ox + dx, oy + dy)), rot((ovx, ovy)))
        assert abs(moved.DCPA) == pytest.approx(abs(base.DCPA), abs=1e-7)
        assert moved.TCPA == pytest.approx(base.TCPA, abs=1e-7)
        assert moved.CR == pytest.approx(base.CR, abs=1e-9)


class TestBruteForceOracle:
    """Closed-form DCPA/TCPA against constant-velocity propagation on a fine time grid."""

    DT = 1e-3

    def test_random_encounters(self):
        rng = np.random.default_rng(20240611)
        for _ in range(1000):
            ship = rng.uniform(-10.0, 10.0, size=2)
            obs = ship + rng.uniform(-20.0, 20.0, size=2)
            ship_vel = rng.uniform(-1.2, 1.2, size=2)
            obs_vel = rng.uniform(-1.2, 1.2, size=2)
            w = obs_vel - ship_vel
            if np.hypot(*w) < 0.3:
                continue
            a = assess(0, tuple(ship), tuple(ship_vel), tuple(obs), tuple(obs_vel))

            horizon = max(2.0 * a.R / a.V_R, 1.0)
            t = np.arange(0.0, horizon, self.DT)
            rel = (obs - ship)[None, :] + t[:, None] * w[None, :]
            dist = np.hypot(rel[:, 0], rel[:, 1])
            i = int(np.argmin(dist))

            if a.TCPA > 0.0:
                assert abs(abs(a.DCPA) - dist[i]) <= max(0.01 * dist[i], 1e-3)
                assert abs(a.TCPA - t[i]) <= max(0.01 * a.TCPA, 1e-3)
                assert a.CR == pytest.approx(math.exp(-abs(a.DCPA) - a.TCPA))
            else:
                assert i == 0
                assert a.CR == 0.0
