"""Events that can end an integration besides the axis and the singular curve."""

import math
from dataclasses import dataclass
from typing import Optional, Sequence, Tuple, Union

from utils.constants import TWO_PI


def crossed_level(before: float, after: float, line: float) -> Optional[float]:
    """
    Finds the copy line + 2 pi k crossed between two angles, if any.

    A start exactly on the line does not count as a crossing.

    Returns:
        The crossed level on the covering line, or None.
    """
    low, high = min(before, after), max(before, after)
    k = math.ceil((low - line) / TWO_PI)
    level = line + TWO_PI * k
    while level <= high:
        if (before - level) * (after - level) < 0 or (after == level and before != level):
            return level
        level += TWO_PI
    return None


@dataclass(frozen=True)
class LineStop:
    """Stop at the first crossing of theta = line (mod 2 pi) for any listed line."""

    lines: Tuple[float, ...]
    direction: int = 0

    def first_crossing(self, before: float, after: float) -> Optional[float]:
        if self.direction and (after - before) * self.direction <= 0:
            return None
        candidates = []
        for line in self.lines:
            level = crossed_level(before, after, line)
            if level is not None:
                candidates.append(level)
        if not candidates:
            return None
        # The level reached first is the one closest to the starting angle.
        return min(candidates, key=lambda level: abs(level - before))


@dataclass(frozen=True)
class PeriodicStop:
    """Stop when the orbit comes back through its seed in the seed's direction."""

    x0: float
    theta0: float
    direction: int

    def first_crossing(self, before: float, after: float) -> Optional[float]:
        if (after - before) * self.direction <= 0:
            return None
        return crossed_level(before, after, self.theta0)


Stop = Union[LineStop, PeriodicStop]
Stops = Sequence[Stop]
