import math
import re
from dataclasses import dataclass
from typing import Optional

from phi.parser import parse_constant
from utils.errors import ConfigError, ValidationError

EQUILIBRIUM = "equilibrium"
RADIAL = "radial"
SECTION = "section"
AXIS = "axis"

_SECTION_PATTERN = re.compile(r"^x\s*=\s*(?P<x>[^@]+?)\s*(?:@\s*(?P<theta>.+))?$")
_AXIS_PATTERN = re.compile(r"^theta\s*=\s*(?P<theta>.+)$")


@dataclass(frozen=True)
class Seed:
    """Initial data of one classification.

    ``section`` seeds start at (x, theta) with theta defaulting to the line
    through e0; ``axis`` seeds leave the axis point (0, theta).
    """

    kind: str
    x: Optional[float] = None
    theta: Optional[float] = None
    text: str = ""

    @classmethod
    def equilibrium(cls) -> "Seed":
        return cls(EQUILIBRIUM, text=EQUILIBRIUM)

    @classmethod
    def radial(cls) -> "Seed":
        return cls(RADIAL, text=RADIAL)

    @classmethod
    def section(cls, x: float, theta: Optional[float] = None) -> "Seed":
        text = f"x={x:.9g}" if theta is None else f"x={x:.9g}@{theta:.9g}"
        return cls(SECTION, x, theta, text)

    @classmethod
    def axis(cls, theta: float) -> "Seed":
        return cls(AXIS, theta=theta, text=f"theta={theta:.9g}")

    @property
    def label(self) -> str:
        return self.text or self.kind


def parse_seed(text: str) -> Seed:
    """
    Parses ``equilibrium``, ``radial``, ``x=<expr>[@<angle>]`` or ``theta=<angle>``.

    Radii and angles are constant expressions such as ``1/6`` or ``3*pi/2``.

    Raises:
        ConfigError: If the text matches none of the forms.
    """
    stripped = text.strip()
    try:
        if stripped == EQUILIBRIUM:
            return Seed.equilibrium()
        if stripped == RADIAL:
            return Seed.radial()
        match = _SECTION_PATTERN.match(stripped)
        if match:
            x = parse_constant(match.group("x"))
            theta = match.group("theta")
            if not x > 0:
                raise ConfigError(f"seed radius must be positive in '{text}'")
            angle = None if theta is None else parse_constant(theta)
            return Seed(SECTION, x, angle, stripped)
        match = _AXIS_PATTERN.match(stripped)
        if match:
            angle = parse_constant(match.group("theta"))
            if abs(math.sin(angle)) < 1e-12:
                raise ConfigError(f"axis seed '{text}' is orthogonal; use 'radial'")
            return Seed(AXIS, theta=angle, text=stripped)
    except ConfigError:
        raise
    except ValidationError as err:
        raise ConfigError(f"bad seed '{text}': {err}") from err
    raise ConfigError(f"unrecognised seed '{text}'")
