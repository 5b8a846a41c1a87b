"""Waypoint geometry: cross-track and course-angle errors."""

import math
from typing import Tuple

from ..dynamics.integrator import wrap_angle
from ..errors import DegeneratePath

Vec = Tuple[float, float]

# Below this speed the heading stands in for the course over ground
COURSE_SPEED_EPS = 1e-9


def track_azimuth(start_wp: Vec, dest_wp: Vec) -> float:
    """Azimuth of the leg start -> dest, counter-clockwise from +X."""
    return math.atan2(dest_wp[1] - start_wp[1], dest_wp[0] - start_wp[0])


def cross_track_error(ship_pos: Vec, start_wp: Vec, dest_wp: Vec) -> float:
    """
    Signed distance from the ship to the line through the waypoints.

    Positive when the ship lies to port of the track direction.

    Raises:
        DegeneratePath: if the waypoints coincide
    """
    tx, ty = dest_wp[0] - start_wp[0], dest_wp[1] - start_wp[1]
    length = math.hypot(tx, ty)
    if length == 0.0:
        raise DegeneratePath(f"waypoints coincide at {start_wp}")
    px, py = ship_pos[0] - start_wp[0], ship_pos[1] - start_wp[1]
    return (tx * py - ty * px) / length


def course_angle_error(ship_vel_gcs: Vec, start_wp: Vec, dest_wp: Vec, heading: float = 0.0) -> float:
    """wrap(track azimuth - course over ground); the heading substitutes when nearly stopped."""
    if math.hypot(*ship_vel_gcs) < COURSE_SPEED_EPS:
        course = heading
    else:
        course = math.atan2(ship_vel_gcs[1], ship_vel_gcs[0])
    return wrap_angle(track_azimuth(start_wp, dest_wp) - course)


def distance(a: Vec, b: Vec) -> float:
    return math.hypot(b[0] - a[0], b[1] - a[1])
