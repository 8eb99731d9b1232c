from integration.endpoints import detect_endpoint, wall_ratio
from integration.integrator import integrate, integrate_both
from integration.orbit import (
    AXIS_CUSP,
    AXIS_ORTHOGONAL,
    BACKWARD,
    FORWARD,
    LINE_CROSSING,
    PERIODIC_RETURN,
    SINGULAR_CIRCLE,
    START,
    TRUNCATED,
    EndpointKind,
    Orbit,
)
from integration.poincare import poincare_return, section_crossing
from integration.seeds import axis_seed, integrate_from_axis
from integration.settings import DEFAULT_SETTINGS, IntegratorSettings
from integration.stops import LineStop, PeriodicStop
