from visualization.export import (
    ORBIT_COLUMNS,
    RADIAL_COLUMNS,
    VerifyReport,
    orbit_csv,
    radial_csv,
    read_orbit_csv,
    verify_columns,
    verify_orbit_csv,
)
from visualization.mesh import Mesh, revolve
from visualization.portrait import render_phase_portrait, wrapped_polyline
from visualization.report import ClassificationRecord, ReportCollector
