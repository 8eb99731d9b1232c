"""Classification entry points working in the caller's frame."""

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace
from typing import List, Optional, Sequence, Tuple

from classifier.base_classifier import BaseClassifier
from classifier.elliptic_classifier import EllipticClassifier
from classifier.families import OrbitClass
from classifier.hyperbolic_classifier import HyperbolicClassifier
from classifier.seed import AXIS, SECTION, Seed
from geometry.params import Params
from integration.orbit import Orbit
from integration.settings import DEFAULT_SETTINGS, IntegratorSettings
from phase.plane import ELLIPTIC, HYPERBOLIC, require_character
from phase.symmetry import normalize, to_caller_frame
from phi.prescribed import PrescribedFunction
from utils.errors import AtSingularRadius, CharacterViolation, PhiSurfaceError

logger = logging.getLogger(__name__)

THREE_HALVES_PI = 3 * math.pi / 2


def classifier_for(p: Params, phi: PrescribedFunction, settings: IntegratorSettings = DEFAULT_SETTINGS) -> BaseClassifier:
    """The classifier matching the PDE character of already normalized data."""
    character = require_character(p, phi)
    if character.kind == ELLIPTIC:
        return EllipticClassifier(p, phi, settings)
    if character.kind == HYPERBOLIC:
        return HyperbolicClassifier(p, phi, settings)
    raise CharacterViolation(character.kind)


def _flipped_seed(seed: Seed) -> Seed:
    if seed.kind == SECTION and seed.theta is not None:
        return replace(seed, theta=seed.theta + math.pi)
    if seed.kind == AXIS:
        return replace(seed, theta=seed.theta + math.pi)
    return seed


def orbit_for_seed(
    p: Params,
    phi: PrescribedFunction,
    seed: Seed,
    settings: IntegratorSettings = DEFAULT_SETTINGS,
) -> Orbit:
    """Integrates the orbit of a seed without naming its family; returned in the caller's frame."""
    normalized, phi_n, flip = normalize(p, phi)
    classifier = classifier_for(normalized, phi_n, settings)
    orbit = classifier.run_orbit(_flipped_seed(seed) if flip else seed)
    return to_caller_frame(orbit, flip, p)


def classify(
    p: Params,
    phi: PrescribedFunction,
    seed: Seed,
    settings: IntegratorSettings = DEFAULT_SETTINGS,
) -> Tuple[OrbitClass, Orbit]:
    """
    Classifies the rotational surface generated by a seed.

    The data is normalized first (a > 0, and b = 1 in the hyperbolic case);
    the returned orbit is mapped back to the caller's coefficients.

    Args:
        p: Coefficients.
        phi: Prescribed function.
        seed: Equilibrium, radial, section point or axis angle.
        settings: Integrator settings.

    Returns:
        Tuple containing:
            - OrbitClass: The verdict.
            - Orbit: The orbit in the caller's frame.

    Raises:
        CharacterViolation: For parabolic or mixed data.
        Unclassified: If the orbit matches no family.
    """
    normalized, phi_n, flip = normalize(p, phi)
    classifier = classifier_for(normalized, phi_n, settings)
    local_seed = _flipped_seed(seed) if flip else seed
    verdict, orbit = classifier.classify(local_seed)
    if isinstance(classifier, HyperbolicClassifier) and local_seed.kind == SECTION:
        verdict.regime = classifier.regime(local_seed.x)
    verdict.stats["seed"] = seed.label
    verdict.stats["flipped"] = flip
    return verdict, to_caller_frame(orbit, flip, p)


def hyperbolic_classify(
    p: Params,
    phi: PrescribedFunction,
    x0: float,
    settings: IntegratorSettings = DEFAULT_SETTINGS,
) -> OrbitClass:
    """
    Classifies the hyperbolic surface through (x0, 3pi/2) in the normalized frame.

    Raises:
        CharacterViolation: Unless the data is hyperbolic.
        AtSingularRadius: If x0 = 1/a.
    """
    normalized, phi_n, _ = normalize(p, phi)
    character = require_character(normalized, phi_n)
    if character.kind != HYPERBOLIC:
        raise CharacterViolation(character.kind)
    classifier = HyperbolicClassifier(normalized, phi_n, settings)
    regime = classifier.regime(x0)
    if regime is None:
        raise AtSingularRadius(x0)
    verdict, _ = classifier.classify(Seed.section(x0, THREE_HALVES_PI))
    verdict.regime = regime
    return verdict


@dataclass
class SweepResult:
    seed: Seed
    verdict: Optional[OrbitClass] = None
    error: Optional[PhiSurfaceError] = None

    @property
    def ok(self) -> bool:
        return self.verdict is not None

    @property
    def message(self) -> Optional[str]:
        return None if self.error is None else f"{type(self.error).__name__}: {self.error}"


def classify_sweep(
    p: Params,
    phi: PrescribedFunction,
    seeds: Sequence[Seed],
    max_workers: Optional[int] = None,
    settings: IntegratorSettings = DEFAULT_SETTINGS,
) -> List[SweepResult]:
    """
    Classifies many seeds concurrently; results come back in seed order.

    A failing seed is recorded with its error instead of stopping the sweep.
    """

    def one(seed: Seed) -> SweepResult:
        try:
            verdict, _ = classify(p, phi, seed, settings)
            return SweepResult(seed, verdict)
        except PhiSurfaceError as err:
            logger.warning("seed %s failed: %s", seed.label, err)
            return SweepResult(seed, error=err)

    with ThreadPoolExecutor(max_workers=max_workers) as executor:
        results = list(executor.map(one, seeds))
    logger.info("sweep of %d seeds: %d classified", len(results), sum(result.ok for result in results))
    return results
