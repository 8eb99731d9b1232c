"""Flat ``key = value`` run configuration, merged with command-line flags."""

import logging
try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Optional, Union

from classifier.seed import Seed, parse_seed
from geometry.params import Params
from integration.settings import DEFAULT_SETTINGS, IntegratorSettings
from phi.prescribed import PrescribedFunction, load_phi
from utils.errors import ConfigError

logger = logging.getLogger(__name__)

TOLERANCE_KEYS = ("rtol", "atol", "h_max", "s_max")
CONFIG_KEYS = ("a", "b", "phi", "seeds") + TOLERANCE_KEYS


@dataclass
class Config:
    """Raw configuration values; ``resolve`` turns them into validated objects."""

    a: Optional[float] = None
    b: Optional[float] = None
    phi: Optional[str] = None
    seeds: List[str] = field(default_factory=list)
    tolerances: Dict[str, float] = field(default_factory=dict)

    def merged(self, **flags: Any) -> "Config":
        """Copy in which every flag that is not None replaces the file value."""
        tolerances = dict(self.tolerances)
        tolerances.update({key: flags[key] for key in TOLERANCE_KEYS if flags.get(key) is not None})
        seeds = flags.get("seeds") or self.seeds
        return Config(
            a=self.a if flags.get("a") is None else flags["a"],
            b=self.b if flags.get("b") is None else flags["b"],
            phi=self.phi if flags.get("phi") is None else flags["phi"],
            seeds=list(seeds),
            tolerances=tolerances,
        )

    def resolve(self, allow_vanishing: bool = False) -> "RunInputs":
        """
        Validates every value before anything is computed.

        Raises:
            ConfigError: For missing or ill-typed values and unreadable seeds.
            ValidationError: For bad coefficients or a bad phi.
        """
        for name in ("a", "b", "phi"):
            if getattr(self, name) is None:
                raise ConfigError(f"missing value for '{name}'")
        for name, value in self.tolerances.items():
            if not isinstance(value, (int, float)) or isinstance(value, bool) or not value > 0:
                raise ConfigError(f"'{name}' must be a positive number")
        params = Params(float(self.a), float(self.b))
        phi = load_phi(str(self.phi), allow_vanishing=allow_vanishing)
        seeds = [parse_seed(text) for text in self.seeds]
        settings = DEFAULT_SETTINGS.with_overrides(**{key: float(value) for key, value in self.tolerances.items()})
        return RunInputs(params, phi, seeds, settings)


@dataclass
class RunInputs:
    params: Params
    phi: PrescribedFunction
    seeds: List[Seed]
    settings: IntegratorSettings


def _number(key: str, value: Any) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(f"'{key}' must be a number, got {value!r}")
    return float(value)


def load_config(path: Union[str, Path]) -> Config:
    """
    Reads a flat TOML file with the keys a, b, phi, seeds, rtol, atol, h_max, s_max.

    Raises:
        ConfigError: If the file cannot be read or parsed, or has unknown keys.
    """
    path = Path(path)
    try:
        with open(path, "rb") as handle:
            data = tomllib.load(handle)
    except OSError as err:
        raise ConfigError(f"cannot read config {path}: {err}") from err
    except tomllib.TOMLDecodeError as err:
        raise ConfigError(f"invalid config {path}: {err}") from err

    unknown = sorted(set(data) - set(CONFIG_KEYS))
    if unknown:
        raise ConfigError(f"unknown config keys: {', '.join(unknown)}")
    seeds = data.get("seeds", [])
    if not isinstance(seeds, list) or not all(isinstance(seed, str) for seed in seeds):
        raise ConfigError("'seeds' must be a list of strings")
    phi = data.get("phi")
    if phi is not None and not isinstance(phi, (str, int, float)):
        raise ConfigError("'phi' must be an expression string")
    config = Config(
        a=_number("a", data["a"]) if "a" in data else None,
        b=_number("b", data["b"]) if "b" in data else None,
        phi=None if phi is None else str(phi),
        seeds=seeds,
        tolerances={key: _number(key, data[key]) for key in TOLERANCE_KEYS if key in data},
    )
    logger.debug("loaded config %s: %s", path, config)
    return config
