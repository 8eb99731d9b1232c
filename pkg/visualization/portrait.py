"""Phase portraits in the (x, theta) strip rendered to SVG."""

import io
import logging
import math
from typing import List, Optional, Sequence, Tuple

import matplotlib
import numpy as np
from matplotlib.backends.backend_svg import FigureCanvasSVG
from matplotlib.figure import Figure

from classifier.classify import orbit_for_seed
from classifier.seed import Seed
from geometry.params import Params
from integration.orbit import Orbit
from integration.settings import DEFAULT_SETTINGS, IntegratorSettings
from phase.plane import curve_samples, equilibrium, require_character
from utils.constants import SECTION_LINES, TWO_PI
from utils.errors import PhiSurfaceError

logger = logging.getLogger(__name__)

SVG_HASH_SALT = "phi-surface-portrait"
ORBIT_COLORS = ("tab:blue", "tab:orange", "tab:green", "tab:red", "tab:purple",
                "tab:brown", "tab:pink", "tab:olive", "tab:cyan")
FIGURE_SIZE = (7.0, 5.0)


def wrapped_polyline(x: np.ndarray, theta: np.ndarray) -> Tuple[np.ndarray, np.ndarray, List[Tuple[float, float]]]:
    """
    Reduces theta to [0, 2pi) and breaks the line where it wraps.

    Returns:
        (x, reduced theta) with NaN separators, and the (x, theta) points
        where the orbit leaves the strip through 0 or 2pi.
    """
    reduced = np.mod(theta, TWO_PI)
    xs: List[float] = []
    thetas: List[float] = []
    wraps: List[Tuple[float, float]] = []
    for index, (x_value, value) in enumerate(zip(x, reduced)):
        if index and abs(value - reduced[index - 1]) > math.pi:
            edge = TWO_PI if reduced[index - 1] > math.pi else 0.0
            wraps.append((float(x_value), edge))
            wraps.append((float(x_value), TWO_PI - edge))
            xs.append(math.nan)
            thetas.append(math.nan)
        xs.append(float(x_value))
        thetas.append(float(value))
    return np.array(xs), np.array(thetas), wraps


def _trace(ax, orbit: Orbit, color: str, label: str) -> None:
    xs, thetas, wraps = wrapped_polyline(orbit.x, orbit.theta)
    ax.plot(xs, thetas, color=color, linewidth=1.2, label=label)
    if wraps:
        ax.plot([w[0] for w in wraps], [w[1] for w in wraps], linestyle="none",
                marker=">", markersize=4, color=color)


def _frame(ax, p: Params, phi, x_limit: float) -> None:
    thetas, s_values, gamma_values = curve_samples(p, phi)
    ax.plot(s_values, thetas, color="black", linestyle="--", linewidth=1.0, label="S")
    ax.plot(gamma_values, thetas, color="dimgray", linestyle=":", linewidth=1.2, label="Gamma")
    for line in SECTION_LINES:
        ax.axhline(line, color="lightgray", linewidth=0.6, zorder=0)
    e0 = equilibrium(p, phi)
    if e0 is not None:
        ax.plot([e0.x], [e0.reduced], marker="o", color="black", linestyle="none", label="e0")
    ax.set_xlim(0.0, x_limit)
    ax.set_ylim(0.0, TWO_PI)
    ax.set_yticks([0.0, math.pi / 2, math.pi, 3 * math.pi / 2, TWO_PI])
    ax.set_yticklabels(["0", "pi/2", "pi", "3pi/2", "2pi"])
    ax.set_xlabel("x")
    ax.set_ylabel("theta")


def _x_limit(p: Params, phi, orbits: Sequence[Orbit]) -> float:
    extent = [abs(p.b / p.a)]
    e0 = equilibrium(p, phi)
    if e0 is not None:
        extent.append(e0.x)
    for orbit in orbits:
        finite = orbit.x[np.isfinite(orbit.x)]
        if finite.size:
            extent.append(float(finite.max()))
    return 1.1 * max(extent)


def render_phase_portrait(
    p: Params,
    phi,
    seeds: Sequence[Seed],
    settings: IntegratorSettings = DEFAULT_SETTINGS,
    title: Optional[str] = None,
) -> str:
    """
    Draws S, Gamma, e0, the lines theta = pi/2, pi, 3pi/2 and one orbit per seed.

    Seeds whose integration fails are left out and listed in a warning
    annotation on the figure; the remaining portrait is still returned.

    Args:
        p: Coefficients in the caller's frame.
        phi: Prescribed function.
        seeds: Seeds to integrate, drawn in order.
        settings: Integrator settings.
        title: Figure title; defaults to the data.

    Returns:
        SVG document text, identical for identical inputs.

    Raises:
        CharacterViolation: For parabolic or mixed data.
    """
    character = require_character(p, phi)
    orbits: List[Tuple[Seed, Orbit]] = []
    failures: List[str] = []
    for seed in seeds:
        try:
            orbits.append((seed, orbit_for_seed(p, phi, seed, settings)))
        except PhiSurfaceError as err:
            logger.warning("portrait: seed %s failed: %s", seed.label, err)
            failures.append(f"{seed.label}: {type(err).__name__}")

    with matplotlib.rc_context({"svg.hashsalt": SVG_HASH_SALT, "svg.fonttype": "none", "path.simplify": False}):
        fig = Figure(figsize=FIGURE_SIZE)
        FigureCanvasSVG(fig)
        ax = fig.add_subplot(1, 1, 1)
        _frame(ax, p, phi, _x_limit(p, phi, [orbit for _, orbit in orbits]))
        for index, (seed, orbit) in enumerate(orbits):
            _trace(ax, orbit, ORBIT_COLORS[index % len(ORBIT_COLORS)], seed.label)
        if failures:
            ax.text(0.02, 0.02, "warning: skipped " + "; ".join(failures), transform=ax.transAxes,
                    fontsize=7, color="darkred", verticalalignment="bottom")
        ax.legend(loc="upper right", fontsize=7)
        ax.set_title(title or f"a = {p.a:g}, b = {p.b:g}, phi = {phi.text} ({character.kind})", fontsize=9)
        buffer = io.BytesIO()
        fig.savefig(buffer, format="svg", metadata={"Date": None})
    return buffer.getvalue().decode("utf-8")
