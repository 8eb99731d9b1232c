import math
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

import numpy as np

from geometry.curvature import ProfileSample
from geometry.params import Params

AXIS_ORTHOGONAL = "AxisOrthogonal"
AXIS_CUSP = "AxisCusp"
SINGULAR_CIRCLE = "SingularCircle"
LINE_CROSSING = "LineCrossing"
PERIODIC_RETURN = "PeriodicReturn"
TRUNCATED = "Truncated"
START = "Start"

FORWARD = "forward"
BACKWARD = "backward"


@dataclass(frozen=True)
class EndpointKind:
    """How one end of an orbit terminates, with the extrapolated limit point."""

    kind: str
    theta: Optional[float] = None
    x: Optional[float] = None
    s: Optional[float] = None
    detail: Dict[str, Any] = field(default_factory=dict, compare=False)

    @property
    def on_axis(self) -> bool:
        return self.kind in (AXIS_ORTHOGONAL, AXIS_CUSP)

    def as_dict(self) -> Dict[str, Any]:
        data: Dict[str, Any] = {"kind": self.kind}
        for name in ("theta", "x", "s"):
            value = getattr(self, name)
            if value is not None:
                data[name] = value
        data.update(self.detail)
        return data

    def __str__(self) -> str:
        if self.theta is None:
            return self.kind
        if self.x is None:
            return f"{self.kind}({self.theta:.9g})"
        return f"{self.kind}(theta={self.theta:.9g}, x={self.x:.9g})"


@dataclass
class Orbit:
    """Arc-length samples of one solution together with its two ends."""

    samples: List[ProfileSample]
    start_end: EndpointKind
    finish_end: EndpointKind
    params: Params
    phi_id: str
    closed: bool = False
    stats: Dict[str, Any] = field(default_factory=dict, compare=False)

    def __len__(self) -> int:
        return len(self.samples)

    def column(self, name: str) -> np.ndarray:
        return np.array([getattr(sample, name) for sample in self.samples])

    @property
    def s(self) -> np.ndarray:
        return self.column("s")

    @property
    def x(self) -> np.ndarray:
        return self.column("x")

    @property
    def theta(self) -> np.ndarray:
        return self.column("theta")

    @property
    def z(self) -> np.ndarray:
        return self.column("z")

    @property
    def interior(self) -> List[ProfileSample]:
        """Samples strictly off the axis."""
        return [sample for sample in self.samples if sample.x > 0]

    @property
    def increasing(self) -> bool:
        """Whether the samples are ordered by increasing arc length."""
        return len(self.samples) < 2 or self.samples[-1].s >= self.samples[0].s

    @property
    def ends(self) -> List[EndpointKind]:
        return [self.start_end, self.finish_end]

    def reversed(self) -> "Orbit":
        """Same samples listed in the opposite order, ends swapped."""
        return Orbit(
            list(reversed(self.samples)), self.finish_end, self.start_end,
            self.params, self.phi_id, self.closed, dict(self.stats),
        )

    @classmethod
    def joined(cls, backward: "Orbit", forward: "Orbit") -> "Orbit":
        """
        Glues a backward and a forward integration from the same start.

        Args:
            backward: Orbit integrated toward negative arc length.
            forward: Orbit integrated toward positive arc length.

        Returns:
            One orbit ordered by increasing arc length.
        """
        head = list(reversed(backward.samples))
        tail = forward.samples[1:] if forward.samples else []
        return cls(
            head + tail,
            backward.finish_end,
            forward.finish_end,
            forward.params,
            forward.phi_id,
            backward.closed or forward.closed,
        )

    def max_deviation(self, x0: float, theta0: float) -> float:
        if not self.samples:
            return 0.0
        return float(max(np.max(np.abs(self.x - x0)), np.max(np.abs(self.theta - theta0))))

    def describe(self) -> Dict[str, Any]:
        s = self.s
        return {
            "samples": len(self.samples),
            "arc_length": float(s.max() - s.min()) if len(s) else 0.0,
            "start": self.start_end.as_dict(),
            "finish": self.finish_end.as_dict(),
            "closed": self.closed,
        }


def finite(value: float) -> bool:
    return value is not None and math.isfinite(value)
