from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, List, Optional

from integration.orbit import EndpointKind

POSITIVE = "positive"
NEGATIVE = "negative"
CHANGES = "changes"
ZERO = "zero"


class Family(str, Enum):
    """Rotational surface types of the elliptic and hyperbolic classifications."""

    CYLINDER = "Cylinder"
    SPHERE = "Sphere"
    UNDULOID = "Unduloid"
    NODOID = "Nodoid"
    E15_CUSP_MONOTONE = "E15_CuspMonotone"
    E16_ANNULUS_MONOTONE = "E16_AnnulusMonotone"
    E17_NON_MONOTONE = "E17_NonMonotone"
    E18_K_SIGN_CHANGE = "E18_KSignChange"
    H1_CUSP_POSITIVE_K = "H1_CuspPositiveK"
    H2_CYLINDER = "H2_Cylinder"
    H3_ANNULUS_NEGATIVE_K = "H3_AnnulusNegativeK"
    H4_NODOID_COMPLETE = "H4_NodoidComplete"
    H42_CUSP_SPHERE_LIKE = "H42_CuspSphereLike"

    def __str__(self) -> str:
        return self.value


def _format(value: Any) -> str:
    if isinstance(value, float):
        return f"{value:.7g}"
    return str(value)


@dataclass
class OrbitClass:
    """Verdict of a classification: family, parameters and the measured signature."""

    family: Family
    parameters: Dict[str, Any]
    complete: bool
    gauss_sign: str
    height_monotone: bool
    ends: List[EndpointKind] = field(default_factory=list)
    regime: Optional[str] = None
    stats: Dict[str, Any] = field(default_factory=dict)

    def verdict(self) -> str:
        """One-line summary such as ``Unduloid neck=0.1666667 complete=true``."""
        parts = [self.family.value]
        parts += [f"{key}={_format(value)}" for key, value in self.parameters.items()]
        parts.append(f"complete={'true' if self.complete else 'false'}")
        return " ".join(parts)

    def as_dict(self) -> Dict[str, Any]:
        data = {
            "family": self.family.value,
            "parameters": dict(self.parameters),
            "complete": self.complete,
            "gauss_sign": self.gauss_sign,
            "height_monotone": self.height_monotone,
            "ends": [end.as_dict() for end in self.ends],
        }
        if self.regime is not None:
            data["regime"] = self.regime
        if self.stats:
            data["stats"] = dict(self.stats)
        return data
