"""Exception hierarchy shared across the planning toolkit."""


class HapFsoError(Exception):
    """Base class for all toolkit errors."""


class DegenerateBeamError(HapFsoError, ValueError):
    """A zero-width beam was requested (infinite radiation density)."""


class GeometryInfeasibleError(HapFsoError):
    """The supplementary footprint cannot reach both joint points."""


class AngleOverflowError(GeometryInfeasibleError):
    """The extended coverage ray reaches or passes the horizon."""


class NoFeasibleAlphaError(HapFsoError):
    """No principal beam width on the grid meets the power requirement."""


class NoFeasibleBetaError(HapFsoError):
    """No supplementary beam width on the grid meets the requirements."""


class RoutingFailure(HapFsoError):
    """A lightpath demand could not be routed on the HAP topology."""

    def __init__(self, demand, message=None):
        self.demand = demand
        super().__init__(message or f"cannot route {demand}")


class DesignInfeasibleError(HapFsoError):
    """The design loop hit its ceiling on inter-HAP links per HAP."""

    def __init__(self, last_v, message=None):
        self.last_v = last_v
        super().__init__(message or f"design infeasible up to V={last_v}")


class InvariantViolation(HapFsoError, AssertionError):
    """A produced plan breaks one of its structural invariants."""


class ConfigError(HapFsoError, ValueError):
    """Invalid run configuration."""
