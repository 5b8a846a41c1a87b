"""Ownship state in non-dimensional units."""

import math
from dataclasses import dataclass, replace
from typing import Tuple


@dataclass(frozen=True)
class VesselState:
    """Pose, body velocities and actuator state of the ownship.

    Positions are in units of L, velocities in U, yaw rate in U/L, angles in
    radians. psi is measured counter-clockwise from the global +X axis and
    positive rudder turns the bow to starboard.
    """

    x: float = 0.0
    y: float = 0.0
    psi: float = 0.0
    u: float = 1.0
    v: float = 0.0
    r: float = 0.0
    delta: float = 0.0
    delta_c: float = 0.0
    n: float = 0.0

    @property
    def position(self) -> Tuple[float, float]:
        return (self.x, self.y)

    @property
    def speed(self) -> float:
        return math.hypot(self.u, self.v)

    def velocity_gcs(self) -> Tuple[float, float]:
        """Velocity over ground in the global frame."""
        c, s = math.cos(self.psi), math.sin(self.psi)
        return (self.u * c - self.v * s, self.u * s + self.v * c)

    def motion(self) -> Tuple[float, float, float, float, float, float]:
        """The six integrated components (x, y, psi, u, v, r)."""
        return (self.x, self.y, self.psi, self.u, self.v, self.r)

    def with_motion(self, x, y, psi, u, v, r) -> "VesselState":
        return replace(self, x=float(x), y=float(y), psi=float(psi),
                       u=float(u), v=float(v), r=float(r))

    def with_command(self, delta_c: float) -> "VesselState":
        return replace(self, delta_c=float(delta_c))

    def mirrored(self) -> "VesselState":
        """Reflection about the global X axis."""
        return VesselState(self.x, -self.y, -self.psi, self.u, -self.v, -self.r,
                           -self.delta, -self.delta_c, self.n)

    def is_finite(self) -> bool:
        return all(math.isfinite(c) for c in (*self.motion(), self.delta, self.delta_c, self.n))
