"""CSV text for orbits and radial solutions, and the residual re-check of an orbit file."""

import io
import logging
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Dict, Union

import numpy as np

from geometry.curvature import weingarten_residual
from geometry.params import Params
from integration.orbit import Orbit
from phi.expression import evaluate
from phi.prescribed import PrescribedFunction
from radial.solver import RadialSolution
from utils.constants import CSV_DIGITS, VERIFY_TOL
from utils.errors import ValidationError

logger = logging.getLogger(__name__)

ORBIT_COLUMNS = ("s", "x", "theta", "z", "kappa1", "kappa2", "H", "K", "residual")
RADIAL_COLUMNS = ("r", "u", "uprime", "residual")

_FORMAT = f"%.{CSV_DIGITS}g"


def _csv_text(columns, rows: np.ndarray) -> str:
    buffer = io.StringIO()
    np.savetxt(buffer, rows, fmt=_FORMAT, delimiter=",", header=",".join(columns), comments="")
    return buffer.getvalue()


def orbit_rows(o: Orbit, phi: PrescribedFunction) -> np.ndarray:
    """One row per sample; the residual is NaN on the axis."""
    rows = np.empty((len(o.samples), len(ORBIT_COLUMNS)))
    for index, sample in enumerate(o.samples):
        residual = weingarten_residual(sample, o.params, phi) if sample.x > 0 else math.nan
        rows[index] = (
            sample.s, sample.x, sample.theta, sample.z,
            sample.kappa1, sample.kappa2, sample.H, sample.K, residual,
        )
    return rows


def orbit_csv(o: Orbit, phi: PrescribedFunction) -> str:
    """
    Renders an orbit as CSV text.

    Args:
        o: Orbit in the caller's frame (its params are used for the residual).
        phi: Prescribed function of the same frame.

    Returns:
        Text with the header ``s,x,theta,z,kappa1,kappa2,H,K,residual``.
    """
    return _csv_text(ORBIT_COLUMNS, orbit_rows(o, phi))


def radial_csv(sol: RadialSolution, p: Params, phi: PrescribedFunction) -> str:
    """Renders a radial solution; the two grid ends carry a NaN residual."""
    residual = np.full(len(sol.grid), math.nan)
    residual[1:-1] = sol.residuals(p, phi)
    rows = np.column_stack([sol.grid, sol.u, sol.uprime, residual])
    return _csv_text(RADIAL_COLUMNS, rows)


def read_orbit_csv(path: Union[str, Path]) -> Dict[str, np.ndarray]:
    """
    Loads an orbit CSV into one array per column.

    Raises:
        ValidationError: If the file is missing or its header is not the orbit header.
    """
    path = Path(path)
    try:
        with open(path, encoding="utf-8") as handle:
            header = handle.readline().strip()
            if tuple(header.split(",")) != ORBIT_COLUMNS:
                raise ValidationError(f"{path} is not an orbit CSV (header '{header}')")
            data = np.loadtxt(handle, delimiter=",", ndmin=2)
    except OSError as err:
        raise ValidationError(f"cannot read {path}: {err}") from err
    except ValueError as err:
        raise ValidationError(f"malformed orbit CSV {path}: {err}") from err
    if data.size == 0:
        data = np.empty((0, len(ORBIT_COLUMNS)))
    return {name: data[:, index] for index, name in enumerate(ORBIT_COLUMNS)}


@dataclass
class VerifyReport:
    """Outcome of re-checking an orbit file against a relation 2aH + bK = phi."""

    rows: int
    checked: int
    max_residual: float
    max_stored_residual: float
    worst_s: float
    tolerance: float

    @property
    def passed(self) -> bool:
        return self.checked > 0 and self.max_residual < self.tolerance

    def as_dict(self) -> Dict[str, Any]:
        return {
            "rows": self.rows,
            "checked": self.checked,
            "max_residual": self.max_residual,
            "max_stored_residual": self.max_stored_residual,
            "worst_s": self.worst_s,
            "tolerance": self.tolerance,
            "passed": self.passed,
        }


def verify_columns(
    columns: Dict[str, np.ndarray],
    p: Params,
    phi: PrescribedFunction,
    tolerance: float = VERIFY_TOL,
) -> VerifyReport:
    """
    Recomputes the residual of every off-axis row from x, theta and kappa1.

    kappa2, H and K are rebuilt from the position and angle, so a file whose
    curvature columns were produced for other coefficients fails the check.
    """
    x, theta, kappa1 = columns["x"], columns["theta"], columns["kappa1"]
    mask = (x > 0) & np.isfinite(kappa1)
    if not np.any(mask):
        logger.warning("no off-axis rows to verify")
        return VerifyReport(len(x), 0, math.nan, math.nan, math.nan, tolerance)
    kappa2 = np.sin(theta[mask]) / x[mask]
    H = 0.5 * (kappa1[mask] + kappa2)
    K = kappa1[mask] * kappa2
    residual = np.abs(2 * p.a * H + p.b * K - evaluate(phi.expr, np.cos(theta[mask])))
    worst = int(np.argmax(residual))
    stored = columns["residual"][mask]
    finite = stored[np.isfinite(stored)]
    report = VerifyReport(
        rows=len(x),
        checked=int(mask.sum()),
        max_residual=float(residual[worst]),
        max_stored_residual=float(np.max(np.abs(finite))) if finite.size else math.nan,
        worst_s=float(columns["s"][mask][worst]),
        tolerance=tolerance,
    )
    logger.info("verified %d rows: max residual %.3e", report.checked, report.max_residual)
    return report


def verify_orbit_csv(
    path: Union[str, Path],
    p: Params,
    phi: PrescribedFunction,
    tolerance: float = VERIFY_TOL,
) -> VerifyReport:
    return verify_columns(read_orbit_csv(path), p, phi, tolerance)
