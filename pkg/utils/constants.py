import math

# Prescribed-function validation
GRID_POINTS = 1001
EVEN_TOL = 1e-10
VANISH_TOL = 1e-8
DERIVATIVE_POINTS = 101
DERIVATIVE_REL_TOL = 1e-6
FD_STEP = 1e-5

# Phase plane
EPS_SING = 1e-9      # relative guard on a*x + b*sin(theta)
EPS_REGION = 1e-10
TWO_PI = 2.0 * math.pi
SECTION_LINES = (math.pi / 2, math.pi, 3 * math.pi / 2)

# Integrator
RTOL = 1e-10
ATOL = 1e-10
H_MAX = 1e-2
S_MAX = 100.0
EPS_AXIS = 1e-9
EPS_POLE = 1e-4
POLE_ANGLE = 1e-3
EPS_ORTH = 1e-5
EPS_WALL = 1e-7
EVENT_TOL = 1e-12
RETURN_TOL = 1e-6
WALL_STEP_FRACTION = 0.25
AXIS_SEED_ARC = 1e-6
AXIS_SEED_ARC_TANGENT = 1e-4
CONSTANT_ORBIT_TOL = 1e-9
EQUILIBRIUM_ARC = 10.0

# Radial solver
RADIAL_N = 512
PICARD_TOL = 1e-12
PICARD_MAX_ITER = 200
DELTA_FRACTION = 0.1
DELTA_HALVINGS = 8

# Classifier
BISECTION_TOL = 1e-8
SIGN_TOL = 1e-12
HEIGHT_TOL = 1e-8
X1_SEED_OFFSET = 0.2
X1_SEED_LEVELS = 7

# Export
CSV_DIGITS = 17
MESH_SEGMENTS = 64
VERIFY_TOL = 1e-5

# Exit statuses
EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_NUMERICAL = 2
