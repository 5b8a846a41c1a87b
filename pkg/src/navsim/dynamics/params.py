"""
Hydrodynamic parameter sets for the MMG model.

Coefficients are never hard-coded: they are read from a versioned JSON
document (see data/params/kcs_like.json) and checked before use. All values
are prime-II non-dimensional; L and U are the only dimensional inputs.
"""

import json
import math
from dataclasses import asdict, dataclass, fields
from functools import cached_property
from pathlib import Path
from typing import Any, Dict, Tuple, Type, TypeVar, Union

import numpy as np

from ..errors import MissingCoefficient, ParameterError, SingularMassMatrix

SCHEMA_VERSION = 1

# Rudder extremes of the action set
DELTA_MAX_DEG = 35.0

T = TypeVar("T")


@dataclass(frozen=True)
class HullCoefficients:
    """Hull force polynomial in v', r' (surge up to fourth order, sway/yaw up to third)."""

    R0: float
    Xvv: float
    Xvr: float
    Xrr: float
    Xvvvv: float
    Yv: float
    Yr: float
    Yvvv: float
    Yvvr: float
    Yvrr: float
    Yrrr: float
    Nv: float
    Nr: float
    Nvvv: float
    Nvvr: float
    Nvrr: float
    Nrrr: float


@dataclass(frozen=True)
class PropellerParams:
    """Open-water propeller: K_T(J) = k0 + k1 J + k2 J^2."""

    Dp: float
    """Propeller diameter (m)"""
    t_p: float
    """Thrust deduction factor"""
    w_p: float
    """Effective wake fraction"""
    k0: float
    k1: float
    k2: float


@dataclass(frozen=True)
class RudderParams:
    """Rudder normal-force model with hull interaction terms."""

    area_ratio: float
    """Rudder area over L^2"""
    aspect_ratio: float
    t_R: float
    a_H: float
    x_H: float
    x_R: float
    epsilon: float
    kappa: float
    gamma_R: float
    l_R: float
    eta: float
    delta_max_deg: float
    slew_rate_deg: float
    """Steering gear rate in degrees per non-dim time unit L/U"""

    @property
    def delta_max(self) -> float:
        return math.radians(self.delta_max_deg)

    @property
    def slew_rate(self) -> float:
        return math.radians(self.slew_rate_deg)

    @property
    def lift_slope(self) -> float:
        """Fujii's normal-force gradient f_alpha."""
        return 6.13 * self.aspect_ratio / (self.aspect_ratio + 2.25)


@dataclass(frozen=True)
class HydroParams:
    """Complete coefficient set of one vessel plus the L, U scaling."""

    name: str
    L: float
    U: float
    m: float
    mx: float
    my: float
    Izz: float
    Jzz: float
    xG: float
    hull: HullCoefficients
    propeller: PropellerParams
    rudder: RudderParams
    description: str = ""

    def __post_init__(self):
        if not self.L > 0:
            raise ParameterError(f"L must be positive, got {self.L}")
        if not self.U > 0:
            raise ParameterError(f"U must be positive, got {self.U}")
        if not self.m > 0:
            raise SingularMassMatrix(f"mass must be positive, got {self.m}")
        if not self.m + self.mx > 0 or not self.m + self.my > 0:
            raise SingularMassMatrix("effective surge/sway mass must be positive")
        if not self.Izz + self.Jzz > 0:
            raise SingularMassMatrix(f"Izz + Jzz must be positive, got {self.Izz + self.Jzz}")
        if not self.propeller.k0 > 0:
            raise ParameterError(f"k0 must be positive (bollard thrust), got {self.propeller.k0}")
        if not self.propeller.Dp > 0:
            raise ParameterError(f"Dp must be positive, got {self.propeller.Dp}")
        if not self.rudder.slew_rate_deg > 0:
            raise ParameterError(f"slew rate must be positive, got {self.rudder.slew_rate_deg}")
        if not math.isclose(self.rudder.delta_max_deg, DELTA_MAX_DEG):
            raise ParameterError(
                f"delta_max must be {DELTA_MAX_DEG} deg to match the action set, "
                f"got {self.rudder.delta_max_deg}"
            )
        values = [self.L, self.U, self.m, self.mx, self.my, self.Izz, self.Jzz, self.xG]
        for block in (self.hull, self.propeller, self.rudder):
            values.extend(getattr(block, f.name) for f in fields(block))
        if not all(math.isfinite(v) for v in values):
            raise ParameterError("all coefficients must be finite")
        self.mass_matrix_inverse

    @property
    def Dp_prime(self) -> float:
        """Propeller diameter in units of L."""
        return self.propeller.Dp / self.L

    @property
    def time_scale(self) -> float:
        """Seconds per non-dimensional time unit (L/U)."""
        return self.L / self.U

    @cached_property
    def mass_matrix_inverse(self) -> Tuple[Tuple[float, ...], ...]:
        """Inverse of the (surge, sway, yaw) mass matrix including added masses."""
        a = np.array([
            [self.m + self.mx, 0.0, 0.0],
            [0.0, self.m + self.my, self.m * self.xG],
            [0.0, self.m * self.xG, self.Izz + self.m * self.xG ** 2 + self.Jzz],
        ])
        if np.linalg.det(a) <= 0.0:
            raise SingularMassMatrix("mass matrix is not positive definite")
        inv = np.linalg.inv(a)
        return tuple(tuple(float(x) for x in row) for row in inv)


def _build(cls: Type[T], block: Any, section: str) -> T:
    if not isinstance(block, dict):
        raise ParameterError(f"section '{section}' must be an object")
    names = [f.name for f in fields(cls)]
    unknown = sorted(set(block) - set(names))
    if unknown:
        raise ParameterError(f"unknown keys in '{section}': {', '.join(unknown)}")
    for name in names:
        if name not in block:
            raise MissingCoefficient(name)
    try:
        return cls(**{name: float(block[name]) for name in names})
    except (TypeError, ValueError) as e:
        raise ParameterError(f"non-numeric value in '{section}': {e}") from e


_TOP_LEVEL = {"schema_version", "name", "description", "vessel", "mass", "hull", "propeller", "rudder"}
_MASS_KEYS = ("m", "mx", "my", "Izz", "Jzz", "xG")


def params_from_dict(doc: Dict[str, Any]) -> HydroParams:
    """
    Build a parameter set from a decoded parameters document.

    Args:
        doc: Decoded JSON document

    Returns:
        Validated HydroParams

    Raises:
        MissingCoefficient: if a required coefficient is absent
        ParameterError: on unknown keys, wrong schema version or bad values
    """
    if not isinstance(doc, dict):
        raise ParameterError("parameters document must be a JSON object")
    unknown = sorted(set(doc) - _TOP_LEVEL)
    if unknown:
        raise ParameterError(f"unknown top-level keys: {', '.join(unknown)}")
    version = doc.get("schema_version")
    if version != SCHEMA_VERSION:
        raise ParameterError(f"unsupported schema_version {version!r} (expected {SCHEMA_VERSION})")
    for section in ("vessel", "mass", "hull", "propeller", "rudder"):
        if section not in doc:
            raise MissingCoefficient(section)

    vessel = doc["vessel"]
    mass = doc["mass"]
    for section, block, keys in (("vessel", vessel, ("L", "U")), ("mass", mass, _MASS_KEYS)):
        if not isinstance(block, dict):
            raise ParameterError(f"section '{section}' must be an object")
        extra = sorted(set(block) - set(keys))
        if extra:
            raise ParameterError(f"unknown keys in '{section}': {', '.join(extra)}")
        for key in keys:
            if key not in block:
                raise MissingCoefficient(key)

    try:
        scalars = {k: float(vessel[k]) for k in ("L", "U")}
        scalars.update({k: float(mass[k]) for k in _MASS_KEYS})
    except (TypeError, ValueError) as e:
        raise ParameterError(f"non-numeric vessel or mass value: {e}") from e

    return HydroParams(
        name=str(doc.get("name", "unnamed")),
        description=str(doc.get("description", "")),
        hull=_build(HullCoefficients, doc["hull"], "hull"),
        propeller=_build(PropellerParams, doc["propeller"], "propeller"),
        rudder=_build(RudderParams, doc["rudder"], "rudder"),
        **scalars,
    )


def params_to_dict(params: HydroParams) -> Dict[str, Any]:
    """Inverse of params_from_dict."""
    return {
        "schema_version": SCHEMA_VERSION,
        "name": params.name,
        "description": params.description,
        "vessel": {"L": params.L, "U": params.U},
        "mass": {k: getattr(params, k) for k in _MASS_KEYS},
        "hull": asdict(params.hull),
        "propeller": asdict(params.propeller),
        "rudder": asdict(params.rudder),
    }


def load_params(path: Union[str, Path]) -> HydroParams:
    """
    Load and validate a parameters file.

    Raises:
        ParameterError: if the file is missing, not JSON, or invalid
    """
    path = Path(path)
    try:
        with open(path, encoding="utf-8") as f:
            doc = json.load(f)
    except FileNotFoundError as e:
        raise ParameterError(f"parameters file not found: {path}") from e
    except json.JSONDecodeError as e:
        raise ParameterError(f"invalid JSON in {path}: {e}") from e
    return params_from_dict(doc)


def save_params(params: HydroParams, path: Union[str, Path]) -> Path:
    """Write a parameter set as a parameters document."""
    path = Path(path)
    path.write_text(json.dumps(params_to_dict(params), indent=2) + "\n", encoding="utf-8")
    return path
