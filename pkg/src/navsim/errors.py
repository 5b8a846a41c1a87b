"""Exception types raised across navsim.

Library code raises these; the command line layer maps them to exit codes.
"""


class NavsimError(Exception):
    """Base class for all navsim errors."""
    pass


class ParameterError(NavsimError):
    """Raised when a hydrodynamic parameter file is malformed or out of range."""
    pass


class MissingCoefficient(ParameterError):
    """Raised when a parameter file omits a required coefficient."""

    def __init__(self, name: str):
        super().__init__(f"missing coefficient: {name}")
        self.name = name


class SingularMassMatrix(ParameterError):
    """Raised when effective mass or inertia terms are non-positive."""
    pass


class NoEquilibrium(NavsimError):
    """Raised when no propeller rate balances hull resistance."""
    pass


class NonFiniteState(NavsimError):
    """Raised when integration produces NaN or infinite state components."""
    pass


class StationaryRelative(NavsimError):
    """Raised when relative speed is too small for a closest-approach solution."""
    pass


class DegeneratePath(NavsimError):
    """Raised when two consecutive waypoints coincide."""
    pass


class EmptyList(NavsimError):
    """Raised when an operation needs at least one element."""
    pass


class DimensionMismatch(NavsimError):
    """Raised when an observation does not fit the network input."""
    pass


class NonFiniteLoss(NavsimError):
    """Raised when a training update produces a NaN or infinite loss."""

    def __init__(self, message: str, last_good_checkpoint=None):
        super().__init__(message)
        self.last_good_checkpoint = last_good_checkpoint


class ShapeMismatch(NavsimError):
    """Raised when two networks do not share parameter shapes."""
    pass


class ScenarioError(NavsimError):
    """Raised when a scenario document or name is invalid."""
    pass


class ConfigError(NavsimError):
    """Raised when a training configuration is missing or invalid."""
    pass


class CheckpointError(NavsimError):
    """Raised when a checkpoint file is missing, truncated or of another schema."""
    pass
