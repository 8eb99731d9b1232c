"""Readouts of an integrated orbit that decide its family."""

import math
from dataclasses import dataclass, field
from typing import Any, Dict, List, Tuple

import numpy as np

from classifier.families import CHANGES, NEGATIVE, POSITIVE, ZERO
from integration.orbit import (
    AXIS_CUSP,
    AXIS_ORTHOGONAL,
    PERIODIC_RETURN,
    SINGULAR_CIRCLE,
    Orbit,
)
from phase.plane import first_integral_residual
from phase.point import PhasePoint
from utils.constants import CONSTANT_ORBIT_TOL, HEIGHT_TOL, SIGN_TOL


@dataclass(frozen=True)
class GaussProfile:
    """Ordered signs of K along the orbit and where they change."""

    pattern: Tuple[str, ...]
    crossings: Tuple[float, ...]
    crossing_kinds: Tuple[str, ...]

    @property
    def summary(self) -> str:
        if not self.pattern:
            return ZERO
        if len(self.pattern) > 1:
            return CHANGES
        return POSITIVE if self.pattern[0] == "+" else NEGATIVE


@dataclass(frozen=True)
class HeightProfile:
    monotone: bool
    direction: int
    extrema: Tuple[float, ...]


def _interpolated_zero(s0: float, v0: float, s1: float, v1: float) -> float:
    if v1 == v0:
        return 0.5 * (s0 + s1)
    return s0 + (s1 - s0) * v0 / (v0 - v1)


def gauss_sign_profile(o: Orbit) -> GaussProfile:
    """
    Sign pattern of K = kappa1 * kappa2 over the interior samples.

    Samples with |K| below the sign tolerance are skipped. Each sign change is
    attributed to a crossing of Gamma (kappa1 = 0) or of a line theta = k pi
    (kappa2 = 0), whichever factor changed sign.

    Returns:
        The profile; an empty pattern means K vanishes identically.
    """
    pattern: List[str] = []
    crossings: List[float] = []
    kinds: List[str] = []
    previous = None
    for sample in o.interior:
        if not math.isfinite(sample.K) or abs(sample.K) <= SIGN_TOL:
            continue
        sign = "+" if sample.K > 0 else "-"
        if previous is None:
            pattern.append(sign)
        elif sign != pattern[-1]:
            pattern.append(sign)
            kappa1_changed = (sample.kappa1 > 0) != (previous.kappa1 > 0)
            kinds.append("Gamma" if kappa1_changed else "line")
            if kappa1_changed:
                where = _interpolated_zero(previous.s, previous.kappa1, sample.s, sample.kappa1)
            else:
                where = _interpolated_zero(previous.s, previous.kappa2, sample.s, sample.kappa2)
            crossings.append(where)
        previous = sample
    return GaussProfile(tuple(pattern), tuple(crossings), tuple(kinds))


def height_monotonicity(o: Orbit) -> HeightProfile:
    """
    Whether z is strictly monotone along the orbit, from the sign of sin(theta).

    Returns:
        The profile with the arc lengths of the height extrema (crossings of theta = k pi).
    """
    extrema: List[float] = []
    signs = set()
    previous = None
    for sample in o.interior:
        value = math.sin(sample.theta)
        if abs(value) <= HEIGHT_TOL:
            continue
        sign = 1 if value > 0 else -1
        signs.add(sign)
        if previous is not None and sign != previous[1]:
            extrema.append(_interpolated_zero(previous[0].s, math.sin(previous[0].theta), sample.s, value))
        previous = (sample, sign)
    monotone = len(signs) <= 1
    direction = signs.pop() if len(signs) == 1 else 0
    return HeightProfile(monotone, direction, tuple(extrema))


def first_integral_drift(o: Orbit, c: float) -> float:
    """Largest |first integral residual| against the first interior sample, for phi = c."""
    interior = o.interior
    if len(interior) < 2:
        return 0.0
    first = PhasePoint(interior[0].x, interior[0].theta)
    return max(
        abs(first_integral_residual(first, PhasePoint(sample.x, sample.theta), o.params, c))
        for sample in interior[1:]
    )


@dataclass
class Signature:
    """Everything the family rules look at."""

    start_kind: str
    finish_kind: str
    constant: bool
    periodic: bool
    complete: bool
    monotone: bool
    gauss: GaussProfile
    theta_range: Tuple[float, float]
    x_range: Tuple[float, float]
    extra: Dict[str, Any] = field(default_factory=dict)

    @property
    def end_kinds(self) -> Tuple[str, str]:
        return self.start_kind, self.finish_kind

    def count(self, kind: str) -> int:
        return sum(1 for end in self.end_kinds if end == kind)

    @property
    def matching_ends(self) -> bool:
        return self.start_kind == self.finish_kind

    def as_dict(self) -> Dict[str, Any]:
        return {
            "ends": list(self.end_kinds),
            "constant": self.constant,
            "periodic": self.periodic,
            "complete": self.complete,
            "monotone": self.monotone,
            "gauss_pattern": "".join(self.gauss.pattern),
            "gauss_crossings": list(self.gauss.crossings),
            "theta_range": list(self.theta_range),
            "x_range": list(self.x_range),
            **self.extra,
        }


def is_complete(o: Orbit) -> bool:
    """Both ends periodic returns or orthogonal axis points, and no singular circle."""
    kinds = [end.kind for end in o.ends]
    if SINGULAR_CIRCLE in kinds:
        return False
    return all(kind in (PERIODIC_RETURN, AXIS_ORTHOGONAL) for kind in kinds)


def read_signature(o: Orbit) -> Signature:
    """
    Collects the signature of an orbit.

    Args:
        o: Integrated orbit.

    Returns:
        The signature used by the family rules.
    """
    start = o.samples[0]
    constant = o.closed and o.max_deviation(start.x, start.theta) < CONSTANT_ORBIT_TOL
    thetas = o.theta
    interior_x = np.array([sample.x for sample in o.interior]) if o.interior else np.array([0.0])
    return Signature(
        start_kind=o.start_end.kind,
        finish_kind=o.finish_end.kind,
        constant=constant,
        periodic=o.closed,
        complete=is_complete(o),
        monotone=height_monotonicity(o).monotone,
        gauss=gauss_sign_profile(o),
        theta_range=(float(np.min(thetas)), float(np.max(thetas))),
        x_range=(float(np.min(interior_x)), float(np.max(interior_x))),
        extra={"cusps": sum(1 for end in o.ends if end.kind == AXIS_CUSP)},
    )
