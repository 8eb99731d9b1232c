import logging
import math
import time
from abc import ABC, abstractmethod
from typing import Any, Dict, Optional, Tuple

from classifier.families import Family, OrbitClass
from classifier.seed import AXIS, EQUILIBRIUM, RADIAL, SECTION, Seed
from classifier.signature import Signature, read_signature
from geometry.curvature import raw_theta_prime
from geometry.params import Params
from integration.integrator import integrate, integrate_both
from integration.orbit import FORWARD, Orbit
from integration.seeds import integrate_from_axis
from integration.settings import DEFAULT_SETTINGS, IntegratorSettings
from integration.stops import PeriodicStop
from phase.plane import equilibrium, section_angle
from phase.point import PhasePoint
from phi.prescribed import PrescribedFunction
from utils.constants import EQUILIBRIUM_ARC
from utils.errors import NotApplicable, Unclassified

logger = logging.getLogger(__name__)


class BaseClassifier(ABC):
    """Abstract base class of the elliptic and hyperbolic classifiers.

    Subclasses only decide the family from a signature; running the orbit
    and reading its signature is shared. Coefficients are expected in the
    normalized frame (a > 0).
    """

    def __init__(self, p: Params, phi: PrescribedFunction, settings: IntegratorSettings = DEFAULT_SETTINGS):
        """
        Initializes the classifier.

        Args:
            p: Normalized coefficients.
            phi: Prescribed function in the same frame.
            settings: Integrator settings for every orbit it runs.
        """
        self.p = p
        self.phi = phi
        self.settings = settings

    @abstractmethod
    def family_of(self, signature: Signature) -> Family:
        """
        Picks the family matching a signature.

        Args:
            signature: Readout of the integrated orbit.

        Returns:
            The family.

        Raises:
            Unclassified: If no rule matches.
        """
        pass

    def get_name(self) -> str:
        return self.__class__.__name__

    def run_orbit(self, seed: Seed) -> Orbit:
        """
        Integrates the full orbit of a seed in both directions.

        Raises:
            NotApplicable: For seeds the data has no meaning for (no e0, radial in the hyperbolic case).
        """
        p, phi, settings = self.p, self.phi, self.settings
        if seed.kind == EQUILIBRIUM:
            e0 = equilibrium(p, phi)
            if e0 is None:
                raise NotApplicable("phi(0) = 0: there is no equilibrium")
            return integrate(e0, FORWARD, p, phi, s_max=EQUILIBRIUM_ARC, settings=settings)
        if seed.kind == RADIAL:
            return self.radial_orbit()
        if seed.kind == AXIS:
            return integrate_from_axis(seed.theta, p, phi, settings=settings)
        if seed.kind == SECTION:
            theta = section_angle(p, phi) if seed.theta is None else seed.theta
            e0 = equilibrium(p, phi)
            if (e0 is not None and math.isclose(seed.x, e0.x, rel_tol=1e-12)
                    and math.isclose(math.cos(theta - e0.theta), 1.0, abs_tol=1e-15)):
                return integrate(e0, FORWARD, p, phi, s_max=EQUILIBRIUM_ARC, settings=settings)
            start = PhasePoint.checked(seed.x, theta, p)
            stop = periodic_stop_for(seed.x, theta, p, phi)
            stops = () if stop is None else (stop,)
            return integrate_both(start, p, phi, stops, backward_stops=(), settings=settings)
        raise NotApplicable(f"unknown seed kind {seed.kind}")

    def radial_orbit(self) -> Orbit:
        raise NotApplicable(f"{self.get_name()} has no radial seed")

    def parameters(self, family: Family, seed: Seed, orbit: Orbit, signature: Signature) -> Dict[str, Any]:
        """The describing parameter of a family: neck-size, radius or cusp angle."""
        if family in (Family.CYLINDER, Family.H2_CYLINDER):
            return {"radius": orbit.samples[0].x}
        if family == Family.SPHERE:
            return {"radius": signature.x_range[1]}
        if family in (Family.UNDULOID, Family.NODOID, Family.H4_NODOID_COMPLETE):
            neck = signature.x_range[0]
            if seed.kind == SECTION and math.isclose(neck, seed.x, rel_tol=1e-6):
                neck = seed.x
            return {"neck": neck}
        if seed.kind == AXIS:
            return {"theta0": seed.theta}
        if seed.kind == SECTION:
            return {"x0": seed.x}
        return {}

    def classify(self, seed: Seed) -> Tuple[OrbitClass, Orbit]:
        """
        Runs the orbit of a seed and names its family.

        Args:
            seed: Initial data.

        Returns:
            Tuple containing:
                - OrbitClass: The verdict with its measured signature.
                - Orbit: The integrated orbit.

        Raises:
            Unclassified: With the full signature when no family matches.
        """
        start_time = time.perf_counter()
        orbit = self.run_orbit(seed)
        signature = read_signature(orbit)
        family = self.family_of(signature)
        elapsed_ms = (time.perf_counter() - start_time) * 1000
        stats = {
            "classifier": self.get_name(),
            "seed": seed.label,
            "samples": len(orbit),
            "time_ms": round(elapsed_ms, 3),
        }
        verdict = OrbitClass(
            family=family,
            parameters=self.parameters(family, seed, orbit, signature),
            complete=signature.complete,
            gauss_sign=signature.gauss.summary,
            height_monotone=signature.monotone,
            ends=list(orbit.ends),
            stats=stats,
        )
        logger.info("%s -> %s", seed.label, verdict.verdict())
        return verdict, orbit

    def unclassified(self, signature: Signature) -> Unclassified:
        dump = signature.as_dict()
        dump["classifier"] = self.get_name()
        return Unclassified(dump)


def periodic_stop_for(x0: float, theta0: float, p: Params, phi: PrescribedFunction) -> Optional[PeriodicStop]:
    slope = raw_theta_prime(x0, theta0, p, phi)
    if slope == 0:
        return None
    return PeriodicStop(x0, theta0, 1 if slope > 0 else -1)
