from phase.plane import (
    ELLIPTIC,
    HYPERBOLIC,
    MIXED,
    PARABOLIC,
    PDECharacter,
    Region,
    constant_crossing,
    equilibrium,
    first_integral_residual,
    linearization_at_e0,
    nullcline,
    pde_character,
    region_of,
    require_character,
    section_angle,
    singular_curve,
    sphere_radius,
    zero_phi_landmark,
)
from phase.point import PhasePoint, reduce_angle
