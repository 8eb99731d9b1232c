from dataclasses import dataclass, replace

from utils.constants import (
    ATOL,
    EPS_AXIS,
    EPS_ORTH,
    EPS_POLE,
    EPS_WALL,
    EVENT_TOL,
    H_MAX,
    POLE_ANGLE,
    RETURN_TOL,
    RTOL,
    S_MAX,
    WALL_STEP_FRACTION,
)


@dataclass(frozen=True)
class IntegratorSettings:
    """Tolerances and walls of one integration run."""

    rtol: float = RTOL
    atol: float = ATOL
    h_max: float = H_MAX
    s_max: float = S_MAX
    eps_axis: float = EPS_AXIS
    eps_pole: float = EPS_POLE
    pole_angle: float = POLE_ANGLE
    eps_orth: float = EPS_ORTH
    eps_wall: float = EPS_WALL
    event_tol: float = EVENT_TOL
    return_tol: float = RETURN_TOL
    wall_step_fraction: float = WALL_STEP_FRACTION

    def with_overrides(self, **overrides) -> "IntegratorSettings":
        """Copy with the given fields replaced; None values are ignored."""
        return replace(self, **{key: value for key, value in overrides.items() if value is not None})


DEFAULT_SETTINGS = IntegratorSettings()
