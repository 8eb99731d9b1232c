from geometry.curvature import (
    ProfileSample,
    curvatures,
    raw_theta_prime,
    theta_prime,
    weingarten_residual,
)
from geometry.params import Params
