from radial.continuation import graph_samples, radial_orbit
from radial.solver import (
    DOWN,
    UP,
    RadialSolution,
    apply_T,
    default_delta,
    seed_orbit,
    solve_radial,
    solve_radial_shrinking,
)
